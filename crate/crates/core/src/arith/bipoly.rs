use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::laurent::UniLaurent;
use super::scalar::ExactRat;
use crate::error::{Error, Result};

/// Polynomial in two named variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    vars: (String, String),
    terms: BTreeMap<(i64, i64), ExactRat>,
}

impl BiPoly {
    pub fn zero(x: &str, y: &str) -> Self {
        BiPoly { vars: (x.to_string(), y.to_string()), terms: BTreeMap::new() }
    }

    pub fn from_terms(x: &str, y: &str, terms: impl IntoIterator<Item = ((i64, i64), ExactRat)>) -> Self {
        let mut p = Self::zero(x, y);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> (&str, &str) {
        (&self.vars.0, &self.vars.1)
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), ExactRat> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, j: i64) -> ExactRat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn add_term(&mut self, e: (i64, i64), c: ExactRat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(ExactRat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch(
                format!("{},{}", self.vars.0, self.vars.1),
                format!("{},{}", other.vars.0, other.vars.1),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (&e, c) in &other.terms {
            out.add_term(e, c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars.0, &self.vars.1);
        for (&(a, b), c) in &self.terms {
            for (&(d, e), f) in &other.terms {
                out.add_term((a + d, b + e), c * f);
            }
        }
        Ok(out)
    }

    /// Swaps the roles of the two variables, keeping the variable names in place.
    pub fn transpose(&self) -> Self {
        BiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    /// Substitutes `x = x0` and returns a polynomial in the second variable.
    pub fn eval_first(&self, x0: &ExactRat) -> UniLaurent {
        let mut out = UniLaurent::zero(&self.vars.1);
        for (&(i, j), c) in &self.terms {
            let p = if i >= 0 {
                num_traits::pow(x0.clone(), i as usize)
            } else {
                num_traits::pow(x0.recip(), (-i) as usize)
            };
            out.add_term(j, c * p);
        }
        out
    }

    /// Substitutes `y = y0` and returns a polynomial in the first variable.
    pub fn eval_second(&self, y0: &ExactRat) -> UniLaurent {
        self.transpose().with_vars(&self.vars.1, &self.vars.0).eval_first(y0).with_var(&self.vars.0)
    }

    fn with_vars(mut self, x: &str, y: &str) -> Self {
        self.vars = (x.to_string(), y.to_string());
        self
    }

    /// Substitutes `x = c1 * s^a`, `y = c2 * s^b` into a polynomial in `s`.
    pub fn monomial_substitute(&self, var: &str, c1: &ExactRat, a: i64, c2: &ExactRat, b: i64) -> UniLaurent {
        let mut out = UniLaurent::zero(var);
        for (&(i, j), c) in &self.terms {
            let k = signed_pow(c1, i) * signed_pow(c2, j);
            out.add_term(a * i + b * j, c * k);
        }
        out
    }

    pub fn max_degrees(&self) -> (i64, i64) {
        self.terms.keys().fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }
}

fn signed_pow(c: &ExactRat, e: i64) -> ExactRat {
    if e >= 0 {
        num_traits::pow(c.clone(), e as usize)
    } else if c.is_zero() {
        ExactRat::one() / c
    } else {
        num_traits::pow(c.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;

    #[test]
    fn product_and_symmetry() {
        let a = BiPoly::from_terms("z", "w", [((1, 0), rat(1, 1)), ((0, 1), rat(1, 1))]);
        let sq = a.checked_mul(&a).unwrap();
        assert_eq!(sq.coeff(1, 1), rat(2, 1));
        assert!(sq.is_symmetric());
        let b = BiPoly::from_terms("z", "w", [((2, 0), rat(1, 1))]);
        assert!(!b.is_symmetric());
        assert!(a.checked_add(&BiPoly::zero("x", "w")).is_err());
    }

    #[test]
    fn substitutions() {
        // z^2 w + 3 w^2
        let p = BiPoly::from_terms("z", "w", [((2, 1), rat(1, 1)), ((0, 2), rat(3, 1))]);
        assert_eq!(p.eval_first(&rat(0, 1)), UniLaurent::monomial("w", 2, rat(3, 1)));
        assert_eq!(
            p.eval_second(&rat(1, 1)),
            UniLaurent::from_terms("z", [(2, rat(1, 1)), (0, rat(3, 1))])
        );
        // z = 1, w = -1/t
        let s = p.monomial_substitute("t", &rat(1, 1), 0, &rat(-1, 1), -1);
        assert_eq!(s, UniLaurent::from_terms("t", [(-1, rat(-1, 1)), (-2, rat(3, 1))]));
    }
}
