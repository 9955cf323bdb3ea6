//! Exact scalar and polynomial types.

pub mod bipoly;
pub mod laurent;
pub mod ratfun;
pub mod scalar;
pub mod zpoly;

pub use bipoly::BiPoly;
pub use laurent::{poly_add, poly_mul, UniLaurent};
pub use ratfun::{ratfun_reduce, UniRatFun};
pub use scalar::{big_binomial, moebius, ExactInt, ExactRat};
pub use zpoly::ZPoly;
