use num_integer::Integer;
use num_traits::Zero;

use super::tuples::TupleSum;
use super::{spread_even, BettiPoly, Quiver};
use crate::arith::scalar::{moebius, rat};
use crate::arith::{ExactInt, UniLaurent};
use crate::error::{Error, Result};
use crate::modp::{reconstruct_univariate, Fp};
use crate::series::Coeff;

fn check(q: &Quiver) -> Result<()> {
    if q.v.iter().all(|&x| x == 0) {
        return Err(Error::OutOfRange("dimension vector v must be nonzero".into()));
    }
    Ok(())
}

/// Kac polynomial `A_Q(v; q)` from Hua's formula, by evaluation over F_p.
///
/// At `q = x` the Hua sum is the unframed tuple sum at `s = 1/x`, and
/// `Log_v = Σ_{k | gcd v} μ(k)/k · (log F)(x^k)_{v/k}`.
pub fn kac_polynomial(q: &Quiver) -> Result<UniLaurent> {
    check(q)?;
    let g = q.v.iter().fold(0u32, |a, &b| a.gcd(&b));
    let divisors: Vec<u32> = (1..=g).filter(|k| g % k == 0 && moebius(*k as u64) != 0).collect();
    let sums: Vec<(u32, TupleSum, Vec<usize>)> = divisors
        .iter()
        .map(|&k| {
            let caps: Vec<usize> = q.v.iter().map(|&x| (x / k) as usize).collect();
            (k, TupleSum::new(q, &caps, false), caps)
        })
        .collect();
    let eval = |f: &Fp, x: u64| -> Option<u64> {
        let mut total = 0u64;
        for (k, ts, caps) in &sums {
            let s = f.inv(f.pow(x, *k as u64))?;
            let log = ts.eval(f, s)?.log(f).ok()?;
            let c = log.coeffs[log.index(caps)];
            let w = f.mul(f.from_i64(moebius(*k as u64)), f.inv(*k as u64)?);
            total = f.add(total, f.mul(w, c));
        }
        Some(f.mul(f.sub(x, 1), total))
    };
    let bound = (1 - q.euler_form()).max(1) as usize;
    let c = reconstruct_univariate(eval, bound, 4 * bound + 8, 0x6b6163)?;
    Ok(UniLaurent::from_int_coeffs("q", 0, &c))
}

/// [`kac_polynomial`] with exact plethystic logarithm over rational functions in `q`.
pub fn kac_polynomial_exact(q: &Quiver) -> Result<UniLaurent> {
    check(q)?;
    let caps: Vec<usize> = q.v.iter().map(|&x| x as usize).collect();
    // tuple sum in s = 1/q, rewritten in q
    let series = TupleSum::new(q, &caps, false).exact("s")?;
    let mut terms = Vec::new();
    for (u, c) in series.terms() {
        let num = c.num().adams(-1).with_var("q");
        let den = c.den().adams(-1).with_var("q");
        terms.push((u.clone(), crate::arith::UniRatFun::new(num, den)?));
    }
    let vars: Vec<String> = series.vars().to_vec();
    let vref: Vec<&str> = vars.iter().map(String::as_str).collect();
    let f = crate::series::TruncSeries::from_terms(&vref, series.truncation().clone(), "q".to_string(), terms)?;
    let log = f.pleth_log()?;
    let qm1 = UniLaurent::from_terms("q", [(0, rat(-1, 1)), (1, rat(1, 1))]);
    let c = log.coeff(&q.v).checked_mul(&crate::arith::UniRatFun::from_laurent(qm1))?;
    let a = c.to_laurent().ok_or_else(|| Error::NonPolynomial(format!("A = {c} is not a polynomial")))?;
    if !Coeff::is_zero(&a) && (!a.is_polynomial() || !a.is_integral()) {
        return Err(Error::NonPolynomial(format!("A = {a} is not an integer polynomial")));
    }
    Ok(a)
}

/// `P(M_v; t) = t^{d_v} A_Q(v; t^{-2})` with `d_v = 2(1 − ⟨v,v⟩)`, for indivisible `v`.
pub fn poincare_quiver_indivisible(q: &Quiver) -> Result<BettiPoly> {
    if !q.is_indivisible() {
        return Err(Error::Divisible(q.v.clone()));
    }
    let a = kac_polynomial(q)?;
    let half = 1 - q.euler_form();
    let (start, c) = a.to_int_coeffs().ok_or_else(|| Error::NonPolynomial(format!("A = {a}")))?;
    if start < 0 || start + c.len() as i64 - 1 > half {
        return Err(Error::NonPolynomial(format!("A has degree beyond d_v/2 = {half}")));
    }
    // b_{2i} = a_{half - i}
    let coeff = |j: i64| -> ExactInt {
        let k = j - start;
        if k >= 0 && (k as usize) < c.len() { c[k as usize].clone() } else { ExactInt::zero() }
    };
    let rev: Vec<ExactInt> = (0..=half).map(|i| coeff(half - i)).collect();
    BettiPoly::new("quiver-indivisible", q.params(), spread_even(&rev), 2 * half, Some(half), 2 * half)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::families::poincare_toric_quiver;
    use crate::graph::Graph;

    fn q(c: &[i64]) -> UniLaurent {
        UniLaurent::from_i64_coeffs("q", 0, c)
    }

    #[test]
    fn small_kac_polynomials() {
        assert_eq!(kac_polynomial(&Quiver::a1(1, 0)).unwrap(), q(&[1]));
        assert!(Coeff::is_zero(&kac_polynomial(&Quiver::a1(2, 0)).unwrap()));
        assert_eq!(kac_polynomial(&Quiver::jordan(1, 0)).unwrap(), q(&[0, 1]));
        // the Jordan quiver has A = q in every dimension
        assert_eq!(kac_polynomial(&Quiver::jordan(3, 0)).unwrap(), q(&[0, 1]));
        let a2 = Quiver::new(2, vec![(0, 1)], vec![1, 1], None).unwrap();
        assert_eq!(kac_polynomial(&a2).unwrap(), q(&[1]));
        // Kronecker quiver at (1,1): P^1 worth of indecomposables
        let kr = Quiver::new(2, vec![(0, 1), (0, 1)], vec![1, 1], None).unwrap();
        assert_eq!(kac_polynomial(&kr).unwrap(), q(&[1, 1]));
    }

    #[test]
    fn exact_and_modular_agree() {
        for (g, n) in [(0usize, 1u32), (1, 2), (2, 2), (2, 3), (3, 2)] {
            let qv = Quiver::loops(g, n, 0);
            assert_eq!(kac_polynomial(&qv).unwrap(), kac_polynomial_exact(&qv).unwrap(), "g={g} n={n}");
        }
        let kr = Quiver::new(2, vec![(0, 1), (0, 1)], vec![2, 2], None).unwrap();
        assert_eq!(kac_polynomial(&kr).unwrap(), kac_polynomial_exact(&kr).unwrap());
    }

    #[test]
    fn indivisible_examples() {
        assert_eq!(poincare_quiver_indivisible(&Quiver::jordan(1, 0)).unwrap().coefficients, vec![ExactInt::one()]);
        assert!(matches!(poincare_quiver_indivisible(&Quiver::jordan(2, 0)), Err(Error::Divisible(_))));
        let k4 = Graph::complete(4);
        let quiver = Quiver::new(4, k4.edges().to_vec(), vec![1; 4], None).unwrap();
        assert_eq!(
            poincare_quiver_indivisible(&quiver).unwrap().coefficients,
            poincare_toric_quiver(&k4).unwrap().coefficients
        );
    }
}
