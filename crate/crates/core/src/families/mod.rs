//! Poincaré polynomials of the variety families.

mod higgs;
mod kac;
mod nakajima;
mod simple;
mod tuples;

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::arith::{ExactInt, UniLaurent};
use crate::error::{Error, Result};

pub use higgs::{higgs_h, higgs_h_at_zero, higgs_h_exact, poincare_higgs, poincare_higgs_from_h, HiggsResult};
pub use kac::{kac_polynomial, kac_polynomial_exact, poincare_quiver_indivisible};
pub use nakajima::{nakajima_dimension, poincare_nakajima, poincare_nakajima_exact};
pub use simple::{
    poincare_adhm, poincare_grassmannian, poincare_hilbert, poincare_toric_complete, poincare_toric_quiver,
    poincare_torus, q_binomial,
};

/// A Poincaré polynomial `Σ b_i t^i` together with the data it was computed from.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiPoly {
    pub family: String,
    pub params: BTreeMap<String, Value>,
    /// `b_0, b_1, ...`, trailing zeros trimmed.
    pub coefficients: Vec<ExactInt>,
    pub complex_dim: i64,
    /// Complex dimension of the core, when known.
    pub core_dim: Option<i64>,
    /// The power of `t` used to normalise the generating-function output.
    pub dim_shift: i64,
}

impl BettiPoly {
    /// Checks nonnegativity and `b_0 = 1`.
    pub fn new(
        family: &str,
        params: BTreeMap<String, Value>,
        mut coefficients: Vec<ExactInt>,
        complex_dim: i64,
        core_dim: Option<i64>,
        dim_shift: i64,
    ) -> Result<Self> {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        if let Some((i, c)) = coefficients.iter().enumerate().find(|(_, c)| c.is_negative()) {
            return Err(Error::NegativeCoefficient(format!("{family}: b_{i} = {c}")));
        }
        if coefficients.first().map_or(true, |b| !b.is_one()) {
            let b0 = coefficients.first().cloned().unwrap_or_default();
            return Err(Error::Identity(format!("{family}: b_0 = {b0}, expected 1")));
        }
        Ok(BettiPoly { family: family.into(), params, coefficients, complex_dim, core_dim, dim_shift })
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coeff(&self, i: usize) -> ExactInt {
        self.coefficients.get(i).cloned().unwrap_or_default()
    }

    /// Smallest degree attaining the maximal Betti number.
    pub fn argmax(&self) -> (usize, ExactInt) {
        let mut best = (0, self.coefficients[0].clone());
        for (i, c) in self.coefficients.iter().enumerate() {
            if *c > best.1 {
                best = (i, c.clone());
            }
        }
        best
    }

    pub fn odd_vanish(&self) -> bool {
        self.coefficients.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coefficients;
        (0..c.len()).all(|i| c[i] == c[c.len() - 1 - i])
    }

    pub fn to_laurent(&self, var: &str) -> UniLaurent {
        UniLaurent::from_int_coeffs(var, 0, &self.coefficients)
    }

    /// `E(q) = Σ b_{2i} q^{dim − i}` for even cohomology.
    pub fn e_polynomial(&self) -> UniLaurent {
        let terms = self
            .coefficients
            .iter()
            .step_by(2)
            .enumerate()
            .map(|(i, b)| (self.complex_dim - i as i64, b.clone().into()));
        UniLaurent::from_terms("q", terms)
    }

    /// Total Betti number `P(1)`.
    pub fn euler_total(&self) -> ExactInt {
        self.coefficients.iter().sum()
    }
}

/// Framed quiver with a dimension vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: usize,
    /// Directed edges `(i, j)`; loops are `(i, i)`.
    pub edges: Vec<(usize, usize)>,
    pub v: Vec<u32>,
    pub w: Vec<u32>,
}

impl Quiver {
    /// `w` defaults to zero framing.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, v: Vec<u32>, w: Option<Vec<u32>>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Invalid("quiver needs at least one vertex".into()));
        }
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(Error::Invalid(format!("edge ({a},{b}) out of range for {vertices} vertices")));
            }
        }
        if v.len() != vertices {
            return Err(Error::Invalid(format!("v has length {}, expected {vertices}", v.len())));
        }
        let w = w.unwrap_or_else(|| vec![0; vertices]);
        if w.len() != vertices {
            return Err(Error::Invalid(format!("w has length {}, expected {vertices}", w.len())));
        }
        let mut edges = edges;
        edges.sort_unstable();
        Ok(Quiver { vertices, edges, v, w })
    }

    /// One vertex with `g` loops.
    pub fn loops(g: usize, n: u32, w: u32) -> Self {
        Quiver { vertices: 1, edges: vec![(0, 0); g], v: vec![n], w: vec![w] }
    }

    pub fn a1(v: u32, w: u32) -> Self {
        Self::loops(0, v, w)
    }

    pub fn jordan(n: u32, m: u32) -> Self {
        Self::loops(1, n, m)
    }

    pub fn with_v(&self, v: Vec<u32>) -> Result<Self> {
        Quiver::new(self.vertices, self.edges.clone(), v, Some(self.w.clone()))
    }

    /// `⟨v,v⟩ = Σ v_i² − Σ_{edges} v_i v_j`.
    pub fn euler_form(&self) -> i64 {
        let v = |i: usize| self.v[i] as i64;
        (0..self.vertices).map(|i| v(i) * v(i)).sum::<i64>() - self.edges.iter().map(|&(a, b)| v(a) * v(b)).sum::<i64>()
    }

    pub fn is_indivisible(&self) -> bool {
        self.v.iter().fold(0u32, |g, &x| g.gcd(&x)) == 1
    }

    pub fn params(&self) -> BTreeMap<String, Value> {
        let mut p = BTreeMap::new();
        p.insert("vertices".into(), Value::from(self.vertices));
        p.insert("edges".into(), Value::from(self.edges.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>()));
        p.insert("v".into(), Value::from(self.v.clone()));
        p.insert("w".into(), Value::from(self.w.clone()));
        p
    }
}

pub(crate) fn params(kv: &[(&str, Value)]) -> BTreeMap<String, Value> {
    kv.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// `b_{2i} = c_i`.
pub(crate) fn spread_even(c: &[ExactInt]) -> Vec<ExactInt> {
    let mut out = vec![ExactInt::zero(); (2 * c.len()).saturating_sub(1)];
    for (i, x) in c.iter().enumerate() {
        out[2 * i] = x.clone();
    }
    out
}
