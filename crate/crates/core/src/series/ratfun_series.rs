use num_traits::Zero;

use super::Coeff;
use crate::arith::scalar::ExactRat;
use crate::arith::{BiPoly, UniLaurent, UniRatFun};
use crate::error::{Error, Result};

/// Power series in `w`, truncated after `w^order`, with coefficients rational in `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunSeries {
    z: String,
    w: String,
    order: u32,
    c: Vec<UniRatFun>,
}

impl RatFunSeries {
    pub fn zero_in(z: &str, w: &str, order: u32) -> Self {
        RatFunSeries { z: z.into(), w: w.into(), order, c: Vec::new() }
    }

    /// Builds `Σ c[k] w^k`; terms beyond the order are dropped.
    pub fn from_coeffs(z: &str, w: &str, order: u32, coeffs: Vec<UniRatFun>) -> Result<Self> {
        if coeffs.iter().any(|c| c.var() != z) {
            return Err(Error::DomainMismatch);
        }
        let mut s = RatFunSeries { z: z.into(), w: w.into(), order, c: coeffs };
        s.normalize();
        Ok(s)
    }

    /// Embeds a polynomial in `(z, w)`.
    pub fn from_bipoly(p: &BiPoly, order: u32) -> Result<Self> {
        let (z, w) = p.vars();
        let mut coeffs = vec![UniLaurent::zero(z); order as usize + 1];
        for (&(i, j), c) in p.terms() {
            if j < 0 {
                return Err(Error::Invalid("negative w exponent".into()));
            }
            if j as u32 <= order {
                coeffs[j as usize].add_term(i, c.clone());
            }
        }
        let c = coeffs.into_iter().map(UniRatFun::from_laurent).collect();
        Self::from_coeffs(z, w, order, c)
    }

    fn normalize(&mut self) {
        self.c.truncate(self.order as usize + 1);
        while self.c.last().is_some_and(|c| c.is_zero()) {
            self.c.pop();
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, k: usize) -> UniRatFun {
        self.c.get(k).cloned().unwrap_or_else(|| UniRatFun::zero(&self.z))
    }

    pub fn coeffs(&self) -> &[UniRatFun] {
        &self.c
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.z != o.z || self.w != o.w || self.order != o.order {
            return Err(Error::DomainMismatch);
        }
        Ok(())
    }

    /// Converts to a polynomial, asserting every `w`-coefficient is a Laurent polynomial in `z`.
    pub fn to_bipoly(&self) -> Result<BiPoly> {
        let mut out = BiPoly::zero(&self.z, &self.w);
        for (j, c) in self.c.iter().enumerate() {
            let l = c
                .to_laurent()
                .ok_or_else(|| Error::NonPolynomial(format!("w^{j} coefficient {c} is not a polynomial in {}", self.z)))?;
            for (&i, v) in l.terms() {
                out.add_term((i, j as i64), v.clone());
            }
        }
        Ok(out)
    }
}

impl Coeff for RatFunSeries {
    type Domain = (String, String, u32);

    fn zero(d: &Self::Domain) -> Self {
        RatFunSeries::zero_in(&d.0, &d.1, d.2)
    }

    fn one(d: &Self::Domain) -> Self {
        RatFunSeries { z: d.0.clone(), w: d.1.clone(), order: d.2, c: vec![UniRatFun::one(&d.0)] }
    }

    fn domain(&self) -> Self::Domain {
        (self.z.clone(), self.w.clone(), self.order)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|k| self.coeff(k).checked_add(&o.coeff(k))).collect::<Result<_>>()?;
        let mut s = RatFunSeries { c, ..self.clone() };
        s.normalize();
        Ok(s)
    }

    fn neg(&self) -> Self {
        RatFunSeries { c: self.c.iter().map(|x| x.neg()).collect(), ..self.clone() }
    }

    fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        if self.c.is_empty() || o.c.is_empty() {
            return Ok(Self::zero(&self.domain()));
        }
        let n = (self.c.len() + o.c.len() - 1).min(self.order as usize + 1);
        let mut c = vec![UniRatFun::zero(&self.z); n];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] = c[i + j].checked_add(&a.checked_mul(b)?)?;
            }
        }
        let mut s = RatFunSeries { c, ..self.clone() };
        s.normalize();
        Ok(s)
    }

    fn scale(&self, r: &ExactRat) -> Self {
        if Zero::is_zero(r) {
            return Self::zero(&self.domain());
        }
        RatFunSeries { c: self.c.iter().map(|x| x.scale(r)).collect(), ..self.clone() }
    }

    /// Units are the series whose `w^0` coefficient is a nonzero rational function.
    fn inverse(&self) -> Option<Self> {
        let inv0 = self.c.first()?.inverse()?;
        let n = self.order as usize + 1;
        let mut b: Vec<UniRatFun> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut s = UniRatFun::zero(&self.z);
            for j in 1..=k.min(self.c.len() - 1) {
                s = s.checked_add(&self.c[j].checked_mul(&b[k - j]).ok()?).ok()?;
            }
            b.push(s.checked_mul(&inv0).ok()?.neg());
        }
        let mut s = RatFunSeries { c: b, ..self.clone() };
        s.normalize();
        Some(s)
    }

    fn adams(&self, k: u32) -> Self {
        let mut c = vec![UniRatFun::zero(&self.z); self.c.len() * k as usize];
        for (j, x) in self.c.iter().enumerate() {
            let t = j * k as usize;
            if t <= self.order as usize {
                c[t] = x.adams(k);
            }
        }
        let mut s = RatFunSeries { c, ..self.clone() };
        s.normalize();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;
    use crate::series::{TruncSeries, Truncation};

    fn bp(terms: &[((i64, i64), i64)]) -> BiPoly {
        BiPoly::from_terms("z", "w", terms.iter().map(|&(e, c)| (e, rat(c, 1))))
    }

    #[test]
    fn inverse_of_denominator_factor() {
        // z^2 - w^2 has invertible w^0 part
        let a = RatFunSeries::from_bipoly(&bp(&[((2, 0), 1), ((0, 2), -1)]), 8).unwrap();
        let inv = a.inverse().unwrap();
        let prod = a.mul(&inv).unwrap();
        assert!(prod.is_one());
        // 1/(z^2 - w^2) = Σ w^{2k} / z^{2k+2}
        let c2 = inv.coeff(2);
        assert_eq!(c2, UniRatFun::new(UniLaurent::one("z"), UniLaurent::var_pow("z", 4)).unwrap());
        assert!(RatFunSeries::from_bipoly(&bp(&[((0, 1), 1)]), 3).unwrap().inverse().is_none());
    }

    #[test]
    fn adams_acts_on_both_variables() {
        let a = RatFunSeries::from_bipoly(&bp(&[((1, 0), 1), ((0, 1), 1)]), 5).unwrap();
        let b = a.adams(3);
        assert_eq!(b.to_bipoly().unwrap(), bp(&[((3, 0), 1), ((0, 3), 1)]));
        let c = a.adams(6);
        assert_eq!(c.to_bipoly().unwrap(), bp(&[((6, 0), 1)]));
    }

    #[test]
    fn as_series_coefficients() {
        // adams(z + w T, 3) = z^3 + w^3 T^3
        let d = ("z".to_string(), "w".to_string(), 6u32);
        let zc = RatFunSeries::from_bipoly(&bp(&[((1, 0), 1)]), 6).unwrap();
        let wc = RatFunSeries::from_bipoly(&bp(&[((0, 1), 1)]), 6).unwrap();
        let s = TruncSeries::from_terms(&["T"], Truncation::Total(4), d.clone(), [(vec![0], zc), (vec![1], wc)])
            .unwrap();
        let a = s.adams(3).unwrap();
        assert_eq!(a.coeff(&[0]).to_bipoly().unwrap(), bp(&[((3, 0), 1)]));
        assert_eq!(a.coeff(&[3]).to_bipoly().unwrap(), bp(&[((0, 3), 1)]));
        assert_eq!(a.num_terms(), 2);
        // plethystic round trip with two-variable inner coefficients
        let f = s.add(&TruncSeries::constant(&["T"], Truncation::Total(4), RatFunSeries::from_bipoly(&bp(&[((1, 0), -1)]), 6).unwrap())).unwrap();
        assert_eq!(f.pleth_exp().unwrap().pleth_log().unwrap(), f);
    }

    #[test]
    fn non_polynomial_coefficient_is_reported() {
        let a = RatFunSeries::from_bipoly(&bp(&[((0, 0), 1), ((1, 0), 1), ((0, 1), 1)]), 3).unwrap();
        let inv = a.inverse().unwrap();
        assert!(matches!(inv.to_bipoly(), Err(Error::NonPolynomial(_))));
    }
}
