//! Exact Poincaré polynomials of hyperkähler varieties from generating functions.
//!
//! The crate computes Betti numbers of toric quiver varieties, Hilbert schemes
//! of points, ADHM spaces, Nakajima and Kac-type quiver varieties and
//! Higgs-bundle moduli, checks them against finite-field point counts, and
//! analyses the shape of the resulting coefficient sequences.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod families;
pub mod fq;
pub mod graph;
pub mod io;
pub mod modp;
pub mod partitions;
pub mod series;
pub mod suites;

pub use error::{Error, Result};
