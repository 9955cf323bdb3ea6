use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::scalar::{binomial_unchecked, rat_from_int, ExactInt, ExactRat};
use crate::error::{Error, Result};

/// Laurent polynomial in one named variable, stored sparsely.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniLaurent {
    var: String,
    terms: BTreeMap<i64, ExactRat>,
}

impl UniLaurent {
    pub fn zero(var: &str) -> Self {
        UniLaurent { var: var.to_string(), terms: BTreeMap::new() }
    }

    pub fn one(var: &str) -> Self {
        Self::constant(var, ExactRat::one())
    }

    pub fn constant(var: &str, c: ExactRat) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn monomial(var: &str, exp: i64, c: ExactRat) -> Self {
        let mut p = Self::zero(var);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// `var^exp`.
    pub fn var_pow(var: &str, exp: i64) -> Self {
        Self::monomial(var, exp, ExactRat::one())
    }

    pub fn from_terms(var: &str, terms: impl IntoIterator<Item = (i64, ExactRat)>) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds `Σ coeffs[i] var^(start+i)` from integer coefficients.
    pub fn from_int_coeffs(var: &str, start: i64, coeffs: &[ExactInt]) -> Self {
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (start + i as i64, rat_from_int(c.clone())))
            .collect();
        UniLaurent { var: var.to_string(), terms }
    }

    pub fn from_i64_coeffs(var: &str, start: i64, coeffs: &[i64]) -> Self {
        let v: Vec<ExactInt> = coeffs.iter().map(|&c| ExactInt::from(c)).collect();
        Self::from_int_coeffs(var, start, &v)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn terms(&self) -> &BTreeMap<i64, ExactRat> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> ExactRat {
        self.terms.get(&exp).cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coeff(&self) -> Option<&ExactRat> {
        self.terms.values().next_back()
    }

    /// True when no negative exponents occur.
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub(crate) fn add_term(&mut self, exp: i64, c: ExactRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var != other.var {
            return Err(Error::VariableMismatch(self.var.clone(), other.var.clone()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.var);
        }
        let (lo_a, hi_a) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (lo_b, hi_b) = (other.min_exp().unwrap(), other.max_exp().unwrap());
        let span = (hi_a - lo_a + hi_b - lo_b + 1) as usize;
        let dense = span <= 4 * (self.terms.len() * other.terms.len()).max(16);
        if dense && self.is_integral() && other.is_integral() {
            // integer coefficients: dense accumulation without rational normalisation
            let mut acc = vec![ExactInt::zero(); span];
            for (&ea, ca) in &self.terms {
                for (&eb, cb) in &other.terms {
                    acc[(ea - lo_a + eb - lo_b) as usize] += ca.numer() * cb.numer();
                }
            }
            return Self::from_int_coeffs(&self.var, lo_a + lo_b, &acc);
        }
        let mut out = Self::zero(&self.var);
        for (&ea, ca) in &self.terms {
            for (&eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        UniLaurent {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &ExactRat) -> Self {
        if s.is_zero() {
            return Self::zero(&self.var);
        }
        UniLaurent {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e, c * s)).collect(),
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        UniLaurent {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(&self.var);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        result
    }

    /// Substitutes `var -> var^k` (negative `k` reverses the polynomial).
    pub fn adams(&self, k: i64) -> Self {
        UniLaurent {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn eval(&self, x: &ExactRat) -> Result<ExactRat> {
        if x.is_zero() {
            if !self.is_polynomial() {
                return Err(Error::ZeroDenominator);
            }
            return Ok(self.coeff(0));
        }
        let mut acc = ExactRat::zero();
        for (&e, c) in &self.terms {
            let p = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, c)| super::scalar::rat_to_f64(c) * x.powi(e as i32))
            .sum()
    }

    /// `p(var + a)`, for polynomials with nonnegative exponents.
    pub fn taylor_shift(&self, a: &ExactRat) -> Result<Self> {
        if !self.is_polynomial() {
            return Err(Error::Invalid("taylor shift of a Laurent polynomial".into()));
        }
        let Some(deg) = self.max_exp() else {
            return Ok(self.clone());
        };
        let mut coeffs: Vec<ExactRat> = (0..=deg).map(|e| self.coeff(e)).collect();
        // repeated synthetic division (Horner shift)
        let n = coeffs.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &coeffs[j + 1] * a;
                coeffs[j] += t;
            }
        }
        Ok(Self::from_terms(&self.var, coeffs.into_iter().enumerate().map(|(i, c)| (i as i64, c))))
    }

    /// Integer coefficients `[c_lo, ..., c_hi]` with the lowest exponent, if all coefficients are integers.
    pub fn to_int_coeffs(&self) -> Option<(i64, Vec<ExactInt>)> {
        let lo = self.min_exp()?;
        let hi = self.max_exp()?;
        let mut out = vec![ExactInt::zero(); (hi - lo + 1) as usize];
        for (&e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out[(e - lo) as usize] = c.numer().clone();
        }
        Some((lo, out))
    }

    /// Exact division of polynomials; errors unless `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let (q, r) = self.div_rem(other)?;
        if !r.is_zero() {
            return Err(Error::NonPolynomial(format!("{self} is not divisible by {other}")));
        }
        Ok(q)
    }

    /// Euclidean division of polynomials (nonnegative exponents).
    pub fn div_rem(&self, other: &Self) -> Result<(Self, Self)> {
        self.check_var(other)?;
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !self.is_polynomial() || !other.is_polynomial() {
            return Err(Error::Invalid("division of Laurent polynomials".into()));
        }
        let (qd, rd) = dense_div_rem(&to_dense(self), &to_dense(other));
        Ok((from_dense(&self.var, &qd), from_dense(&self.var, &rd)))
    }

    /// Signed-degree reversal helper: `var^d p(1/var)`.
    pub fn reversed(&self, d: i64) -> Self {
        UniLaurent {
            var: self.var.clone(),
            terms: self.terms.iter().map(|(&e, c)| (d - e, c.clone())).collect(),
        }
    }
}

pub(crate) fn to_dense(p: &UniLaurent) -> Vec<ExactRat> {
    match p.max_exp() {
        None => Vec::new(),
        Some(d) => (0..=d).map(|e| p.coeff(e)).collect(),
    }
}

pub(crate) fn from_dense(var: &str, c: &[ExactRat]) -> UniLaurent {
    UniLaurent::from_terms(var, c.iter().enumerate().map(|(i, x)| (i as i64, x.clone())))
}

pub(crate) fn trim(v: &mut Vec<ExactRat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub(crate) fn dense_div_rem(a: &[ExactRat], b: &[ExactRat]) -> (Vec<ExactRat>, Vec<ExactRat>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let lead_inv = b[db].recip();
    let mut q = vec![ExactRat::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub fn poly_add(a: &UniLaurent, b: &UniLaurent) -> Result<UniLaurent> {
    a.checked_add(b)
}

pub fn poly_mul(a: &UniLaurent, b: &UniLaurent) -> Result<UniLaurent> {
    a.checked_mul(b)
}

/// `(1+var)^n` expanded, used by tests and the torus family.
pub fn one_plus_var_pow(var: &str, n: u64) -> UniLaurent {
    UniLaurent::from_terms(
        var,
        (0..=n).map(|i| (i as i64, rat_from_int(binomial_unchecked(n, i)))),
    )
}

impl fmt::Display for UniLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || e == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            if e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.var)?;
                if e != 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&UniLaurent> for &UniLaurent {
            type Output = UniLaurent;
            /// Panics on a variable mismatch; use the `checked_*` form for fallible input.
            fn $m(self, rhs: &UniLaurent) -> UniLaurent {
                self.$checked(rhs).expect("UniLaurent operands must share a variable")
            }
        }
        impl std::ops::$tr<UniLaurent> for UniLaurent {
            type Output = UniLaurent;
            fn $m(self, rhs: UniLaurent) -> UniLaurent {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl std::ops::Neg for &UniLaurent {
    type Output = UniLaurent;
    fn neg(self) -> UniLaurent {
        UniLaurent::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;
    use proptest::prelude::*;

    fn p(var: &str, terms: &[(i64, i64)]) -> UniLaurent {
        UniLaurent::from_terms(var, terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn square_of_t_plus_inverse() {
        let a = p("t", &[(1, 1), (-1, 1)]);
        assert_eq!(poly_mul(&a, &a).unwrap(), p("t", &[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn zero_absorbs() {
        let a = p("q", &[(3, 5), (-2, 1)]);
        assert!(poly_mul(&a, &UniLaurent::zero("q")).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let a = p("q", &[(0, 1), (1, 1)]);
        let b = p("q", &[(0, 1), (1, -1)]);
        assert_eq!(poly_mul(&a, &b).unwrap(), p("q", &[(0, 1), (2, -1)]));
    }

    #[test]
    fn variable_mismatch_is_an_error() {
        let a = UniLaurent::var_pow("q", 1);
        let b = UniLaurent::var_pow("t", 1);
        assert!(matches!(poly_add(&a, &b), Err(Error::VariableMismatch(_, _))));
        assert!(poly_mul(&a, &b).is_err());
    }

    #[test]
    fn taylor_shift_matches_binomial() {
        let x3 = UniLaurent::var_pow("q", 3);
        let s = x3.taylor_shift(&rat(1, 1)).unwrap();
        assert_eq!(s, one_plus_var_pow("q", 3));
    }

    #[test]
    fn division() {
        let a = p("q", &[(2, 1), (0, -1)]);
        let b = p("q", &[(1, 1), (0, -1)]);
        assert_eq!(a.div_exact(&b).unwrap(), p("q", &[(1, 1), (0, 1)]));
        assert!(b.div_exact(&p("q", &[(1, 1), (0, 1)])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p("t", &[(2, 1), (0, -3), (-1, 2)]).to_string(), "t^2 - 3 + 2*t^-1");
    }

    fn arb_poly() -> impl Strategy<Value = UniLaurent> {
        prop::collection::vec((-4i64..6, -5i64..6, 1i64..4), 0..6).prop_map(|ts| {
            UniLaurent::from_terms("t", ts.into_iter().map(|(e, n, d)| (e, rat(n, d))))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in 1i64..5) {
            let x = rat(x, 2);
            prop_assert_eq!((&a * &b).eval(&x).unwrap(), a.eval(&x).unwrap() * b.eval(&x).unwrap());
        }
    }
}
