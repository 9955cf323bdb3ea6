//! Higgs-bundle moduli from the two-variable plethystic generating function.
//!
//! `Σ H_n(z,w) T^n = (z²−1)(1−w²) Log Σ_λ Π_{cells} (z^{2l+1}−w^{2a+1})^{2g} / ((z^{2l+2}−w^{2a})(z^{2l}−w^{2a+2})) T^{|λ|}`.

use num_traits::{Signed, Zero};
use serde_json::Value;

use super::{params, BettiPoly};
use crate::arith::scalar::{moebius, rat};
use crate::arith::{BiPoly, ExactInt, ExactRat, UniLaurent, ZPoly};
use crate::error::{Error, Result};
use crate::modp::{reconstruct_bivariate, Fp};
use crate::partitions::enum_partitions;
use crate::series::{Coeff, RatFunSeries, TruncSeries, Truncation};

/// Cells of every partition of size `1..=n`, as `(a, l)` pairs, grouped by size.
fn cell_lists(n: usize) -> Vec<Vec<Vec<(usize, usize)>>> {
    (0..=n)
        .map(|m| {
            enum_partitions(m as u32)
                .iter()
                .map(|p| p.cells_arm_leg().into_iter().map(|(a, l)| (a as usize, l as usize)).collect())
                .collect()
        })
        .collect()
}

fn batch_inv(f: &Fp, v: &mut [u64]) -> Option<()> {
    let mut prefix = Vec::with_capacity(v.len());
    let mut acc = 1u64;
    for &x in v.iter() {
        prefix.push(acc);
        acc = f.mul(acc, x);
    }
    let mut inv = f.inv(acc)?;
    for i in (0..v.len()).rev() {
        let x = v[i];
        v[i] = f.mul(inv, prefix[i]);
        inv = f.mul(inv, x);
    }
    Some(())
}

/// `[T^m] log Σ_λ Π f(a,l) T^{|λ|}` at one point, for `m <= n`.
fn log_series_at(f: &Fp, z: u64, w: u64, n: usize, g: usize, cells: &[Vec<Vec<(usize, usize)>>]) -> Option<Vec<u64>> {
    let zp: Vec<u64> = (0..=2 * n + 2).map(|k| f.pow(z, k as u64)).collect();
    let wp: Vec<u64> = (0..=2 * n + 2).map(|k| f.pow(w, k as u64)).collect();
    let mut num = vec![0u64; n * n];
    let mut den = vec![0u64; n * n];
    for a in 0..n {
        for l in 0..n {
            num[a * n + l] = f.pow(f.sub(zp[2 * l + 1], wp[2 * a + 1]), 2 * g as u64);
            den[a * n + l] = f.mul(f.sub(zp[2 * l + 2], wp[2 * a]), f.sub(zp[2 * l], wp[2 * a + 2]));
        }
    }
    batch_inv(f, &mut den)?;
    let table: Vec<u64> = num.iter().zip(&den).map(|(&x, &y)| f.mul(x, y)).collect();
    let mut series = vec![0u64; n + 1];
    series[0] = 1;
    for m in 1..=n {
        let mut s = 0u64;
        for p in &cells[m] {
            let v = p.iter().fold(1u64, |acc, &(a, l)| f.mul(acc, table[a * n + l]));
            s = f.add(s, v);
        }
        series[m] = s;
    }
    // m b_m = m a_m − Σ_{0<k<m} k b_k a_{m−k}
    let mut b = vec![0u64; n + 1];
    for m in 1..=n {
        let mut s = f.mul(m as u64, series[m]);
        for k in 1..m {
            s = f.sub(s, f.mul(f.mul(k as u64, b[k]), series[m - k]));
        }
        b[m] = f.mul(s, f.inv(m as u64)?);
    }
    Some(b)
}

/// `H_n(z, w)` by evaluation at points of F_p² and bivariate interpolation.
pub fn higgs_h(n: usize, g: usize) -> Result<BiPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let cells = cell_lists(n);
    let divisors: Vec<usize> = (1..=n).filter(|k| n % k == 0 && moebius(*k as u64) != 0).collect();
    let eval = |f: &Fp, z: u64, w: u64| -> Option<u64> {
        let mut total = 0u64;
        for &k in &divisors {
            let (zk, wk) = (f.pow(z, k as u64), f.pow(w, k as u64));
            let b = log_series_at(f, zk, wk, n / k, g, &cells)?;
            let c = f.mul(f.from_i64(moebius(k as u64)), f.inv(k as u64)?);
            total = f.add(total, f.mul(c, b[n / k]));
        }
        let pre = f.mul(f.sub(f.mul(z, z), 1), f.sub(1, f.mul(w, w)));
        Some(f.mul(pre, total))
    };
    let d0 = (2 * ((n * n) as i64 * (g as i64 - 1) + 1)).max(4) as usize;
    let c = reconstruct_bivariate(eval, d0, 16 * d0, 0x6869_6767 + n as u64)?;
    let mut terms = Vec::new();
    for (i, row) in c.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                terms.push(((i as i64, j as i64), ExactRat::from_integer(v.clone())));
            }
        }
    }
    Ok(BiPoly::from_terms("z", "w", terms))
}

/// `H_n(z, w)` with exact arithmetic: series in `w` over rational functions in `z`.
///
/// The `w`-order doubles from `order` until two consecutive results agree.
pub fn higgs_h_exact(n: usize, g: usize, order: u32) -> Result<BiPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    let mut prev: Option<BiPoly> = None;
    let mut w_order = order.max(4);
    for _ in 0..6 {
        let h = higgs_h_at_order(n, g, w_order)?;
        if prev.as_ref() == Some(&h) {
            return Ok(h);
        }
        prev = Some(h);
        w_order *= 2;
    }
    Err(Error::Truncation(format!("H_{n} did not stabilise up to w-order {w_order}")))
}

fn higgs_h_at_order(n: usize, g: usize, order: u32) -> Result<BiPoly> {
    let bp = |terms: &[((i64, i64), i64)]| -> Result<RatFunSeries> {
        RatFunSeries::from_bipoly(&BiPoly::from_terms("z", "w", terms.iter().map(|&(e, c)| (e, rat(c, 1)))), order)
    };
    let dom = ("z".to_string(), "w".to_string(), order);
    let mut table: Vec<Vec<RatFunSeries>> = Vec::new();
    for a in 0..n as i64 {
        let mut row = Vec::new();
        for l in 0..n as i64 {
            let base = bp(&[((2 * l + 1, 0), 1), ((0, 2 * a + 1), -1)])?;
            let mut num = RatFunSeries::one(&dom);
            for _ in 0..2 * g {
                num = num.mul(&base)?;
            }
            let d1 = bp(&[((2 * l + 2, 0), 1), ((0, 2 * a), -1)])?;
            let d2 = bp(&[((2 * l, 0), 1), ((0, 2 * a + 2), -1)])?;
            let den = d1.mul(&d2)?.inverse().ok_or(Error::ZeroDenominator)?;
            row.push(num.mul(&den)?);
        }
        table.push(row);
    }
    let mut terms = vec![(vec![0u32], RatFunSeries::one(&dom))];
    for m in 1..=n as u32 {
        let mut s = RatFunSeries::zero(&dom);
        for p in enum_partitions(m) {
            let mut v = RatFunSeries::one(&dom);
            for (a, l) in p.cells_arm_leg() {
                v = v.mul(&table[a as usize][l as usize])?;
            }
            s = s.add(&v)?;
        }
        terms.push((vec![m], s));
    }
    let series = TruncSeries::from_terms(&["T"], Truncation::Total(n as u32), dom.clone(), terms)?;
    let log = series.pleth_log()?;
    let pre = bp(&[((2, 0), 1), ((0, 0), -1), ((2, 2), -1), ((0, 2), 1)])?;
    log.coeff(&[n as u32]).mul(&pre)?.to_bipoly()
}

/// `H_n(0, √q)` as a polynomial in `q`.
pub fn higgs_h_at_zero(h: &BiPoly) -> Result<UniLaurent> {
    let mut out = UniLaurent::zero("q");
    for (&(i, j), c) in h.terms() {
        if i == 0 {
            if j % 2 != 0 {
                return Err(Error::Identity(format!("odd power w^{j} survives at z = 0")));
            }
            out = out.checked_add(&UniLaurent::monomial("q", j / 2, c.clone()))?;
        }
    }
    Ok(out)
}

/// Outcome of the Higgs computation.
#[derive(Clone, Debug)]
pub struct HiggsResult {
    pub h: BiPoly,
    /// `t^d H_n(1, −1/t)`, lowest term `t^0`.
    pub full: Vec<ExactInt>,
    /// `full / (1+t)^{2g}`.
    pub betti: BettiPoly,
}

/// Poincaré polynomial of the rank `n` genus `g` Higgs moduli with the `(1+t)^{2g}` Jacobian factor removed.
pub fn poincare_higgs(n: usize, g: usize) -> Result<HiggsResult> {
    let h = higgs_h(n, g)?;
    poincare_higgs_from_h(h, n, g)
}

pub fn poincare_higgs_from_h(h: BiPoly, n: usize, g: usize) -> Result<HiggsResult> {
    // H(1, w) = Σ_j h_j w^j
    let hw = h.eval_first(&rat(1, 1));
    if Coeff::is_zero(&hw) {
        return Err(Error::Identity("H_n(1, w) vanishes".into()));
    }
    let (lo, hs) = hw.to_int_coeffs().ok_or_else(|| Error::NonPolynomial("H_n(1,w) is not integral".into()))?;
    if lo < 0 {
        return Err(Error::NonPolynomial("H_n(1,w) has negative powers".into()));
    }
    let d = lo + hs.len() as i64 - 1;
    // b_{d−j} = (−1)^j h_j
    let full: Vec<ExactInt> = (0..=(d - lo))
        .map(|i| {
            let j = d - i;
            let c = hs[(j - lo) as usize].clone();
            if j % 2 == 0 { c } else { -c }
        })
        .collect();
    if let Some((i, c)) = full.iter().enumerate().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeCoefficient(format!("b_{i} = {c}")));
    }
    let mut reduced = ZPoly::new(full.clone());
    for _ in 0..2 * g {
        reduced = reduced.div_linear(&ExactInt::from(-1))?;
    }
    let dim = 2 * ((n * n) as i64 - 1) * (g as i64 - 1);
    let dim = dim.max(0);
    let p = params(&[("n", Value::from(n)), ("g", Value::from(g))]);
    let betti = BettiPoly::new("higgs", p, reduced.into_coeffs(), dim, Some(dim / 2), d)?;
    Ok(HiggsResult { h, full, betti })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::families::{kac_polynomial, Quiver};

    #[test]
    fn rank_one() {
        for g in 0..=3 {
            let h = higgs_h(1, g).unwrap();
            // H_1 = (z − w)^{2g}
            let mut expect = BiPoly::from_terms("z", "w", [((0, 0), rat(1, 1))]);
            let lin = BiPoly::from_terms("z", "w", [((1, 0), rat(1, 1)), ((0, 1), rat(-1, 1))]);
            for _ in 0..2 * g {
                expect = expect.checked_mul(&lin).unwrap();
            }
            assert_eq!(h, expect, "g={g}");
            let r = poincare_higgs(1, g).unwrap();
            assert_eq!(r.betti.coefficients, vec![ExactInt::one()]);
        }
    }

    #[test]
    fn exact_route_agrees_with_modular() {
        for (n, g) in [(1, 1), (2, 0), (2, 1), (2, 2), (3, 1)] {
            assert_eq!(higgs_h_exact(n, g, 8).unwrap(), higgs_h(n, g).unwrap(), "n={n} g={g}");
        }
    }

    #[test]
    fn specialisation_is_the_loop_quiver_kac_polynomial() {
        for g in 0..=2 {
            for n in 1..=4 {
                let h = higgs_h(n, g).unwrap();
                let a = kac_polynomial(&Quiver::loops(g, n as u32, 0)).unwrap();
                assert_eq!(higgs_h_at_zero(&h).unwrap(), a, "n={n} g={g}");
            }
        }
    }

    #[test]
    fn symmetric_in_z_and_w() {
        for g in 0..=2 {
            for n in 1..=4 {
                assert!(higgs_h(n, g).unwrap().is_symmetric(), "n={n} g={g}");
            }
        }
    }

    #[test]
    fn rank_two_genus_two() {
        let r = poincare_higgs(2, 2).unwrap();
        assert_eq!(r.betti.coeff(0), ExactInt::one());
        assert_eq!(r.betti.coeff(1), ExactInt::zero());
        assert_eq!(r.betti.coeff(2), ExactInt::one());
    }
}
