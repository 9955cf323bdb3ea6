use std::fmt;

use num_traits::{One, Zero};

use super::laurent::{dense_div_rem, from_dense, to_dense, trim, UniLaurent};
use super::scalar::ExactRat;
use crate::error::{Error, Result};

/// Reduced rational function `num/den` in one variable.
///
/// Both parts have nonnegative exponents, `gcd(num, den) = 1` and `den` is
/// monic. Zero is represented as `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniRatFun {
    num: UniLaurent,
    den: UniLaurent,
}

fn dense_gcd(a: &[ExactRat], b: &[ExactRat]) -> Vec<ExactRat> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = dense_div_rem(&a, &b);
        a = b;
        b = r;
        // keep remainders monic to contain coefficient growth
        if let Some(l) = b.last().cloned() {
            let inv = l.recip();
            b.iter_mut().for_each(|c| *c *= &inv);
        }
    }
    if let Some(l) = a.last().cloned() {
        let inv = l.recip();
        a.iter_mut().for_each(|c| *c *= &inv);
    }
    a
}

impl UniRatFun {
    /// Builds and reduces `num/den`.
    pub fn new(num: UniLaurent, den: UniLaurent) -> Result<Self> {
        if num.var() != den.var() {
            return Err(Error::VariableMismatch(num.var().into(), den.var().into()));
        }
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        // clear negative exponents on either side
        let lo = num.min_exp().unwrap_or(0).min(den.min_exp().unwrap_or(0));
        let (num, den) = if lo < 0 { (num.shift(-lo), den.shift(-lo)) } else { (num, den) };
        Ok(Self::reduce_parts(num, den))
    }

    fn reduce_parts(num: UniLaurent, den: UniLaurent) -> Self {
        let var = num.var().to_string();
        if num.is_zero() {
            return UniRatFun { num, den: UniLaurent::one(&var) };
        }
        let (nd, dd) = (to_dense(&num), to_dense(&den));
        let g = dense_gcd(&nd, &dd);
        let (mut n, mut d) = if g.len() > 1 {
            (dense_div_rem(&nd, &g).0, dense_div_rem(&dd, &g).0)
        } else {
            (nd, dd)
        };
        let lead = d.last().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            n.iter_mut().for_each(|c| *c *= &inv);
            d.iter_mut().for_each(|c| *c *= &inv);
        }
        UniRatFun { num: from_dense(&var, &n), den: from_dense(&var, &d) }
    }

    pub fn from_laurent(p: UniLaurent) -> Self {
        let var = p.var().to_string();
        match p.min_exp() {
            Some(lo) if lo < 0 => UniRatFun { num: p.shift(-lo), den: UniLaurent::var_pow(&var, -lo) },
            _ => UniRatFun { num: p, den: UniLaurent::one(&var) },
        }
    }

    pub fn zero(var: &str) -> Self {
        UniRatFun { num: UniLaurent::zero(var), den: UniLaurent::one(var) }
    }

    pub fn one(var: &str) -> Self {
        UniRatFun { num: UniLaurent::one(var), den: UniLaurent::one(var) }
    }

    pub fn constant(var: &str, c: ExactRat) -> Self {
        UniRatFun { num: UniLaurent::constant(var, c), den: UniLaurent::one(var) }
    }

    pub fn var(&self) -> &str {
        self.num.var()
    }

    pub fn num(&self) -> &UniLaurent {
        &self.num
    }

    pub fn den(&self) -> &UniLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Laurent form if the denominator is a monomial.
    pub fn to_laurent(&self) -> Option<UniLaurent> {
        if self.den.num_terms() != 1 {
            return None;
        }
        let e = self.den.min_exp().unwrap();
        let c = self.den.coeff(e);
        Some(self.num.shift(-e).scale(&c.recip()))
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var() != other.var() {
            return Err(Error::VariableMismatch(self.var().into(), other.var().into()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.den == other.den {
            return Ok(Self::reduce_parts(&self.num + &other.num, self.den.clone()));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(Self::reduce_parts(num, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var()));
        }
        Ok(Self::reduce_parts(&self.num * &other.num, &self.den * &other.den))
    }

    pub fn neg(&self) -> Self {
        UniRatFun { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn scale(&self, s: &ExactRat) -> Self {
        if s.is_zero() {
            return Self::zero(self.var());
        }
        UniRatFun { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::reduce_parts(self.den.clone(), self.num.clone()))
    }

    /// `var -> var^k`; coprimality and monicity are preserved.
    pub fn adams(&self, k: u32) -> Self {
        UniRatFun { num: self.num.adams(k as i64), den: self.den.adams(k as i64) }
    }

    pub fn eval(&self, x: &ExactRat) -> Result<ExactRat> {
        let d = self.den.eval(x)?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self.num.eval(x)? / d)
    }
}

/// Returns the reduced form of `f` (already canonical for values built by this module).
pub fn ratfun_reduce(f: &UniRatFun) -> Result<UniRatFun> {
    UniRatFun::new(f.num.clone(), f.den.clone())
}

impl fmt::Display for UniRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;
    use proptest::prelude::*;

    fn p(terms: &[(i64, i64)]) -> UniLaurent {
        UniLaurent::from_terms("q", terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn cancels_common_factor() {
        let f = UniRatFun::new(p(&[(2, 1), (0, -1)]), p(&[(1, 1), (0, -1)])).unwrap();
        assert_eq!(f.num(), &p(&[(1, 1), (0, 1)]));
        assert!(f.den().is_one());
    }

    #[test]
    fn already_reduced() {
        let f = UniRatFun::new(p(&[(1, 1)]), p(&[(0, 1)])).unwrap();
        assert_eq!(f.num(), &p(&[(1, 1)]));
        assert_eq!(ratfun_reduce(&f).unwrap(), f);
    }

    #[test]
    fn cancels_middle_factor() {
        let a = &p(&[(1, 1), (0, -1)]) * &p(&[(1, 1), (0, -2)]);
        let b = &p(&[(1, 1), (0, -2)]) * &p(&[(1, 1), (0, -3)]);
        let f = UniRatFun::new(a, b).unwrap();
        assert_eq!(f.num(), &p(&[(1, 1), (0, -1)]));
        assert_eq!(f.den(), &p(&[(1, 1), (0, -3)]));
    }

    #[test]
    fn monic_denominator() {
        let f = UniRatFun::new(p(&[(0, 3)]), p(&[(1, 2), (0, 4)])).unwrap();
        assert_eq!(f.den().leading_coeff().unwrap(), &rat(1, 1));
        assert_eq!(f.num(), &UniLaurent::constant("q", rat(3, 2)));
    }

    #[test]
    fn zero_denominator() {
        assert_eq!(UniRatFun::new(p(&[(0, 1)]), UniLaurent::zero("q")), Err(Error::ZeroDenominator));
    }

    #[test]
    fn laurent_round_trip() {
        let l = p(&[(-2, 1), (1, 3)]);
        let f = UniRatFun::from_laurent(l.clone());
        assert_eq!(f.to_laurent().unwrap(), l);
    }

    fn arb_poly() -> impl Strategy<Value = UniLaurent> {
        prop::collection::vec((0i64..4, -4i64..5), 1..4)
            .prop_map(|ts| UniLaurent::from_terms("q", ts.into_iter().map(|(e, c)| (e, rat(c, 1)))))
    }

    fn arb_ratfun() -> impl Strategy<Value = UniRatFun> {
        (arb_poly(), arb_poly()).prop_filter_map("nonzero denominator", |(n, d)| {
            if d.is_zero() {
                None
            } else {
                UniRatFun::new(n, d).ok()
            }
        })
    }

    proptest! {
        #[test]
        fn arithmetic_agrees_with_evaluation(f in arb_ratfun(), g in arb_ratfun(), x in -6i64..7) {
            let x = rat(x, 1);
            let (Ok(fx), Ok(gx)) = (f.eval(&x), g.eval(&x)) else { return Ok(()); };
            prop_assert_eq!(f.checked_add(&g).unwrap().eval(&x).unwrap(), &fx + &gx);
            prop_assert_eq!(f.checked_mul(&g).unwrap().eval(&x).unwrap(), fx * gx);
        }

        #[test]
        fn reduction_is_idempotent(n in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            let f = UniRatFun::new(n, d).unwrap();
            prop_assert_eq!(ratfun_reduce(&f).unwrap(), f);
        }
    }
}
