use num_traits::{One, Zero};
use serde_json::Value;

use super::{params, spread_even, BettiPoly};
use crate::arith::scalar::binomial_unchecked;
use crate::arith::{ExactInt, ZPoly};
use crate::error::{Error, Result};
use crate::graph::{complete_graph_r, external_activity_zpoly, Graph};
use crate::partitions::partition_counts_by_length;

fn toric_from_r(r: &ZPoly, b1: i64, family: &str, p: std::collections::BTreeMap<String, Value>) -> Result<BettiPoly> {
    let deg = r.degree().unwrap_or(0) as i64;
    if deg != b1 {
        return Err(Error::Identity(format!("R has degree {deg}, expected first Betti number {b1}")));
    }
    // P(t) = t^{2 b1} R(1/t²)
    let rev: Vec<ExactInt> = (0..=b1).rev().map(|i| r.coeff(i as usize)).collect();
    BettiPoly::new(family, p, spread_even(&rev), 2 * b1, Some(b1), 2 * b1)
}

fn is_simple_complete(g: &Graph) -> bool {
    let n = g.num_vertices();
    g.num_edges() == n * (n - 1) / 2 && g.edges().iter().zip(Graph::complete(n).edges()).all(|(a, b)| a == b)
}

/// Toric quiver variety of a connected graph: `P = t^{2 b_1} R_G(1/t²)`.
pub fn poincare_toric_quiver(g: &Graph) -> Result<BettiPoly> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let r = if is_simple_complete(g) { complete_graph_r(g.num_vertices())? } else { external_activity_zpoly(g)? };
    let edges: Vec<Value> = g.edges().iter().map(|&(a, b)| Value::from(vec![a, b])).collect();
    let p = params(&[("vertices", Value::from(g.num_vertices())), ("edges", Value::from(edges))]);
    toric_from_r(&r, g.first_betti(), "toric", p)
}

/// Toric quiver variety of `K_n`.
pub fn poincare_toric_complete(n: usize) -> Result<BettiPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let r = complete_graph_r(n)?;
    let b1 = (n * (n - 1) / 2) as i64 - n as i64 + 1;
    toric_from_r(&r, b1, "toric-complete", params(&[("n", Value::from(n))]))
}

/// Hilbert scheme of `n` points on the plane: `b_{2i} = #{λ ⊢ n : l(λ) = n − i}`.
pub fn poincare_hilbert(n: usize) -> Result<BettiPoly> {
    let p = params(&[("n", Value::from(n))]);
    if n == 0 {
        return BettiPoly::new("hilbert", p, vec![ExactInt::one()], 0, Some(0), 0);
    }
    let t = partition_counts_by_length(n);
    let c: Vec<ExactInt> = (0..n).map(|i| t[n][n - i].clone()).collect();
    BettiPoly::new("hilbert", p, spread_even(&c), 2 * n as i64, Some(n as i64 - 1), 0)
}

/// ADHM space: coefficient of `T^n` in `Π_{i≥1} Π_{b=1}^m (1 − t^{2(m(i−1)+b−1)} T^i)^{-1}`.
pub fn poincare_adhm(n: usize, m: usize) -> Result<BettiPoly> {
    if m == 0 {
        return Err(Error::EmptyVariety("m = 0".into()));
    }
    let p = params(&[("n", Value::from(n)), ("m", Value::from(m))]);
    // the T^n coefficient has s = t² degree at most nm − 1
    let smax = (n * m).max(1);
    let mut c = vec![vec![ExactInt::zero(); smax]; n + 1];
    c[0][0] = ExactInt::one();
    for i in 1..=n {
        for b in 1..=m {
            let e = m * (i - 1) + b - 1;
            if e >= smax {
                continue;
            }
            for k in i..=n {
                let (lo, hi) = c.split_at_mut(k);
                let src = &lo[k - i];
                for d in e..smax {
                    if !src[d - e].is_zero() {
                        hi[0][d] += &src[d - e];
                    }
                }
            }
        }
    }
    let core = if n == 0 { 0 } else { (n * m) as i64 - 1 };
    BettiPoly::new("adhm", p, spread_even(&c[n]), 2 * (n * m) as i64, Some(core), 0)
}

/// Gaussian binomial `[n k]_q`.
pub fn q_binomial(n: usize, k: usize) -> Result<ZPoly> {
    if k > n {
        return Err(Error::OutOfRange(format!("k = {k} exceeds n = {n}")));
    }
    let mut p = ZPoly::one();
    for i in 1..=k {
        p = p.mul_one_minus_xk(n + 1 - i).div_one_minus_xk(i)?;
    }
    Ok(p)
}

/// Cotangent bundle of the Grassmannian: `[n k]_{t²}`.
pub fn poincare_grassmannian(n: usize, k: usize) -> Result<BettiPoly> {
    let qb = q_binomial(n, k)?;
    let d = (k * (n - k)) as i64;
    let p = params(&[("n", Value::from(n)), ("k", Value::from(k))]);
    BettiPoly::new("grassmannian", p, spread_even(qb.coeffs()), 2 * d, Some(d), 0)
}

/// Rank one Higgs moduli: `(1 + t)^{2g}`.
pub fn poincare_torus(g: usize) -> Result<BettiPoly> {
    let c: Vec<ExactInt> = (0..=2 * g as u64).map(|i| binomial_unchecked(2 * g as u64, i)).collect();
    BettiPoly::new("torus", params(&[("g", Value::from(g))]), c, 2 * g as i64, Some(g as i64), 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enum_partitions;
    use crate::series::{TruncSeries, Truncation};
    use crate::arith::{scalar::rat, UniLaurent};

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| x.into()).collect()
    }

    #[test]
    fn toric_examples() {
        let tree = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(poincare_toric_quiver(&tree).unwrap().coefficients, ints(&[1]));
        let k3 = poincare_toric_quiver(&Graph::complete(3)).unwrap();
        assert_eq!(k3.coefficients, ints(&[1, 0, 2]));
        assert_eq!(k3.complex_dim, 2);
        let c4 = Graph::cycle(4);
        assert_eq!(poincare_toric_quiver(&c4).unwrap().coefficients, ints(&[1, 0, 3]));
        assert_eq!(poincare_toric_complete(5).unwrap().coefficients, poincare_toric_quiver(&Graph::complete(5)).unwrap().coefficients);
        assert_eq!(poincare_toric_quiver(&Graph::new(2, &[]).unwrap()), Err(Error::Disconnected));
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(poincare_hilbert(1).unwrap().coefficients, ints(&[1]));
        assert_eq!(poincare_hilbert(3).unwrap().coefficients, ints(&[1, 0, 1, 0, 1]));
        assert_eq!(poincare_hilbert(0).unwrap().coefficients, ints(&[1]));
    }

    /// Product formula expanded with truncated series in `T` over Laurent polynomials in `t`.
    fn adhm_by_series(n: u32, m: u32) -> Vec<ExactInt> {
        let tr = Truncation::Total(n);
        let mut acc = TruncSeries::one(&["T"], tr.clone(), "t".to_string());
        for i in 1..=n {
            for b in 1..=m {
                let e = 2 * (m * (i - 1) + b - 1) as i64;
                let f = TruncSeries::from_terms(
                    &["T"],
                    tr.clone(),
                    "t".to_string(),
                    [(vec![0], UniLaurent::one("t")), (vec![i], UniLaurent::monomial("t", e, rat(-1, 1)))],
                )
                .unwrap();
                acc = acc.mul(&f.inv().unwrap()).unwrap();
            }
        }
        let c = acc.coeff(&[n]);
        let (_, v) = c.to_int_coeffs().unwrap();
        v
    }

    #[test]
    fn adhm_matches_product_expansion() {
        for (n, m) in [(1, 1), (3, 1), (4, 2), (3, 3), (5, 2)] {
            assert_eq!(poincare_adhm(n, m).unwrap().coefficients, adhm_by_series(n as u32, m as u32), "({n},{m})");
        }
        assert_eq!(poincare_adhm(1, 1).unwrap().coefficients, ints(&[1]));
        assert!(matches!(poincare_adhm(2, 0), Err(Error::EmptyVariety(_))));
        for n in 0..=20 {
            assert_eq!(poincare_adhm(n, 1).unwrap().coefficients, poincare_hilbert(n).unwrap().coefficients);
        }
    }

    #[test]
    fn hilbert_counts_partitions_by_length() {
        for n in 1..=12u32 {
            let h = poincare_hilbert(n as usize).unwrap();
            for p in enum_partitions(n) {
                let i = (n - p.length()) as usize;
                assert!(h.coeff(2 * i) >= ExactInt::one());
            }
            assert_eq!(h.euler_total(), ExactInt::from(enum_partitions(n).len()));
        }
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(poincare_grassmannian(2, 1).unwrap().coefficients, ints(&[1, 0, 1]));
        assert_eq!(poincare_grassmannian(7, 0).unwrap().coefficients, ints(&[1]));
        assert_eq!(q_binomial(4, 2).unwrap(), ZPoly::from_i64(&[1, 1, 2, 1, 1]));
        assert!(matches!(poincare_grassmannian(2, 3), Err(Error::OutOfRange(_))));
        let g = poincare_grassmannian(12, 5).unwrap();
        assert!(g.is_palindromic());
        assert_eq!(g.euler_total(), binomial_unchecked(12, 5));
    }

    #[test]
    fn torus_examples() {
        assert_eq!(poincare_torus(0).unwrap().coefficients, ints(&[1]));
        assert_eq!(poincare_torus(1).unwrap().coefficients, ints(&[1, 2, 1]));
    }
}
