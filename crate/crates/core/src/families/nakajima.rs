use num_traits::Zero;

use super::tuples::{box_div, TupleSum};
use super::{spread_even, BettiPoly, Quiver};
use crate::arith::ExactInt;
use crate::error::{Error, Result};
use crate::modp::{reconstruct_univariate, Fp};
use crate::series::Coeff;

/// `d(v,w) = 2 Σ_{i→j} v_i v_j + 2 Σ_i v_i (w_i − v_i)`.
pub fn nakajima_dimension(q: &Quiver) -> i64 {
    let v = |i: usize| q.v[i] as i64;
    let e: i64 = q.edges.iter().map(|&(a, b)| v(a) * v(b)).sum();
    let f: i64 = (0..q.vertices).map(|i| v(i) * (q.w[i] as i64 - v(i))).sum();
    2 * e + 2 * f
}

fn check(q: &Quiver) -> Result<usize> {
    if q.v.iter().all(|&x| x == 0) {
        return Err(Error::OutOfRange("dimension vector v must be nonzero".into()));
    }
    let d = nakajima_dimension(q);
    if d < 0 {
        return Err(Error::EmptyVariety(format!("d(v,w) = {d} is negative")));
    }
    Ok(d as usize / 2)
}

fn finish(q: &Quiver, c: Vec<ExactInt>, half: usize) -> Result<BettiPoly> {
    if c.iter().all(Zero::is_zero) {
        return Err(Error::EmptyVariety("the generating function has no T^v term".into()));
    }
    if c.len() > half + 1 {
        return Err(Error::NonPolynomial(format!("degree {} exceeds d(v,w)/2 = {half}", c.len() - 1)));
    }
    let d = 2 * half as i64;
    BettiPoly::new("nakajima", q.params(), spread_even(&c), d, Some(half as i64), d)
}

/// Nakajima quiver variety `M(v,w)` from the ratio of partition-tuple sums, by
/// evaluation at points of F_p and interpolation in `s = t²`.
pub fn poincare_nakajima(q: &Quiver) -> Result<BettiPoly> {
    let half = check(q)?;
    let caps: Vec<usize> = q.v.iter().map(|&x| x as usize).collect();
    let num = TupleSum::new(q, &caps, true);
    let den = TupleSum::new(q, &caps, false);
    let target: Vec<usize> = caps.clone();
    let eval = |f: &Fp, x: u64| -> Option<u64> {
        let n = num.eval(f, x)?;
        let d = den.eval(f, x)?;
        let r = box_div(f, &n, &d);
        let v = r.coeffs[r.index(&target)];
        Some(f.mul(v, f.pow(x, half as u64)))
    };
    let c = reconstruct_univariate(eval, half, 4 * half + 8, 0x6e616b61)?;
    finish(q, c, half)
}

/// Same as [`poincare_nakajima`] with exact rational-function arithmetic throughout.
pub fn poincare_nakajima_exact(q: &Quiver) -> Result<BettiPoly> {
    let half = check(q)?;
    let caps: Vec<usize> = q.v.iter().map(|&x| x as usize).collect();
    let num = TupleSum::new(q, &caps, true).exact("s")?;
    let den = TupleSum::new(q, &caps, false).exact("s")?;
    let ratio = num.mul(&den.inv()?)?;
    let u: Vec<u32> = q.v.clone();
    let coeff = ratio.coeff(&u);
    let lau = coeff
        .to_laurent()
        .ok_or_else(|| Error::NonPolynomial(format!("T^v coefficient {coeff} is not a Laurent polynomial")))?;
    let p = lau.shift(half as i64);
    if Coeff::is_zero(&p) {
        return finish(q, vec![], half);
    }
    if !p.is_polynomial() {
        return Err(Error::NonPolynomial(format!("{p} has negative powers")));
    }
    let (start, c) =
        p.to_int_coeffs().ok_or_else(|| Error::NonPolynomial(format!("{p} has non-integral coefficients")))?;
    let mut full = vec![ExactInt::zero(); start as usize];
    full.extend(c);
    finish(q, full, half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{poincare_adhm, poincare_grassmannian, poincare_hilbert};

    #[test]
    fn a1_is_a_grassmannian() {
        let p = poincare_nakajima(&Quiver::a1(1, 2)).unwrap();
        assert_eq!(p.coefficients, poincare_grassmannian(2, 1).unwrap().coefficients);
        assert_eq!(p.complex_dim, 2);
        let e = poincare_nakajima_exact(&Quiver::a1(2, 5)).unwrap();
        assert_eq!(e.coefficients, poincare_grassmannian(5, 2).unwrap().coefficients);
    }

    #[test]
    fn jordan_is_hilbert() {
        for n in 1..=6 {
            let p = poincare_nakajima(&Quiver::jordan(n, 1)).unwrap();
            assert_eq!(p.coefficients, poincare_hilbert(n as usize).unwrap().coefficients, "n={n}");
        }
        let e = poincare_nakajima_exact(&Quiver::jordan(3, 2)).unwrap();
        assert_eq!(e.coefficients, poincare_adhm(3, 2).unwrap().coefficients);
    }

    #[test]
    fn empty_cases() {
        assert!(matches!(poincare_nakajima(&Quiver::a1(3, 2)), Err(Error::EmptyVariety(_))));
        assert!(matches!(poincare_nakajima(&Quiver::a1(0, 2)), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn two_vertex_routes_agree() {
        let q = Quiver::new(2, vec![(0, 1)], vec![1, 1], Some(vec![1, 1])).unwrap();
        let a = poincare_nakajima(&q).unwrap();
        let b = poincare_nakajima_exact(&q).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.complex_dim, 2);
    }
}
