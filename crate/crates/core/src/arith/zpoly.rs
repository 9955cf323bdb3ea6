use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::UniLaurent;
use super::scalar::ExactInt;
use crate::error::{Error, Result};

/// Dense integer polynomial `Σ c[i] x^i`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly {
    c: Vec<ExactInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<ExactInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| ExactInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly { c: vec![ExactInt::one()] }
    }

    pub fn monomial(e: usize, c: ExactInt) -> Self {
        let mut v = vec![ExactInt::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<ExactInt> {
        self.c
    }

    pub fn coeff(&self, i: usize) -> ExactInt {
        self.c.get(i).cloned().unwrap_or_else(ExactInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = self.coeff(i);
            if let Some(y) = o.c.get(i) {
                x += y;
            }
            v.push(x);
        }
        Self::new(v)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ZPoly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn scale(&self, s: &ExactInt) -> Self {
        Self::new(self.c.iter().map(|x| x * s).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![ExactInt::zero(); k];
        v.extend(self.c.iter().cloned());
        ZPoly { c: v }
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        if let Some(p) = self.mul_small(o) {
            return p;
        }
        let mut v = vec![ExactInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }

    /// Machine-word schoolbook product when all partial sums provably fit in `i128`.
    fn mul_small(&self, o: &Self) -> Option<Self> {
        let bits = |p: &Self| p.c.iter().map(|x| x.bits()).max().unwrap_or(0);
        let len = self.c.len().min(o.c.len()) as u64;
        let (ba, bb) = (bits(self), bits(o));
        if ba > 62 || bb > 62 || ba + bb + 64 - len.leading_zeros() as u64 > 125 {
            return None;
        }
        let a: Vec<i64> = self.c.iter().map(|x| x.to_i64().unwrap()).collect();
        let b: Vec<i64> = o.c.iter().map(|x| x.to_i64().unwrap()).collect();
        let mut v = vec![0i128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] += x as i128 * y as i128;
            }
        }
        Some(Self::new(v.into_iter().map(ExactInt::from).collect()))
    }

    /// Exact division by `x - a`; errors if the remainder is nonzero.
    pub fn div_linear(&self, a: &ExactInt) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.c.len();
        let mut q = vec![ExactInt::zero(); n - 1];
        let mut carry = ExactInt::zero();
        for i in (0..n).rev() {
            let cur = &self.c[i] + &carry * a;
            if i == 0 {
                if !cur.is_zero() {
                    return Err(Error::NonPolynomial(format!("nonzero remainder {cur} dividing by x - {a}")));
                }
            } else {
                q[i - 1] = cur.clone();
            }
            carry = cur;
        }
        Ok(Self::new(q))
    }

    /// Exact division by `1 - x^k`.
    pub fn div_one_minus_xk(&self, k: usize) -> Result<Self> {
        assert!(k >= 1);
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let n = self.c.len();
        if n <= k {
            return Err(Error::NonPolynomial(format!("not divisible by 1 - x^{k}")));
        }
        // q = p / (1 - x^k):  q[i] = p[i] + q[i-k]
        let mut q = vec![ExactInt::zero(); n - k];
        for i in 0..n - k {
            let mut v = self.c[i].clone();
            if i >= k {
                v += &q[i - k];
            }
            q[i] = v;
        }
        // check q * (1 - x^k) == p on the top k coefficients
        for i in n - k..n {
            let mut v = if i >= k { -&q[i - k] } else { ExactInt::zero() };
            if i < q.len() {
                v += &q[i];
            }
            if v != self.c[i] {
                return Err(Error::NonPolynomial(format!("not divisible by 1 - x^{k}")));
            }
        }
        Ok(Self::new(q))
    }

    /// Multiplies by `1 - x^k`.
    pub fn mul_one_minus_xk(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = self.c.clone();
        v.resize(self.c.len() + k, ExactInt::zero());
        for i in (0..self.c.len()).rev() {
            let t = v[i].clone();
            v[i + k] -= t;
        }
        Self::new(v)
    }

    /// `p(x + a)`.
    pub fn taylor_shift(&self, a: &ExactInt) -> Self {
        let mut c = self.c.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * a;
                c[j] += t;
            }
        }
        Self::new(c)
    }

    /// First `k` coefficients of `p(1 + x)` without forming the full shift.
    pub fn shifted_coeffs_at_one(&self, k: usize) -> Vec<ExactInt> {
        // [x^j] p(1+x) = Σ_i c_i C(i, j)
        if k == 0 {
            return Vec::new();
        }
        let mut out = vec![ExactInt::zero(); k];
        let mut binom_row: Vec<ExactInt> = vec![ExactInt::zero(); k];
        for (i, ci) in self.c.iter().enumerate() {
            // binom_row[j] = C(i, j) for j < k
            if i == 0 {
                binom_row[0] = ExactInt::one();
            } else {
                for j in (1..k.min(i + 1)).rev() {
                    let t = binom_row[j - 1].clone();
                    binom_row[j] += t;
                }
            }
            for j in 0..k.min(i + 1) {
                out[j] += ci * &binom_row[j];
            }
        }
        out
    }

    pub fn eval(&self, x: &ExactInt) -> ExactInt {
        let mut acc = ExactInt::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn is_nonnegative(&self) -> bool {
        self.c.iter().all(|x| !x.is_negative())
    }

    pub fn to_laurent(&self, var: &str) -> UniLaurent {
        UniLaurent::from_int_coeffs(var, 0, &self.c)
    }

    pub fn from_laurent(p: &UniLaurent) -> Result<Self> {
        if !p.is_polynomial() {
            return Err(Error::Invalid("negative exponent in integer polynomial".into()));
        }
        match p.to_int_coeffs() {
            None if p.is_zero() => Ok(Self::zero()),
            None => Err(Error::Invalid("non-integer coefficient".into())),
            Some((lo, c)) => Ok(Self::new(c).shift(lo as usize)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn products_agree_across_paths() {
        let big: ExactInt = "123456789012345678901234567890".parse().unwrap();
        let a = ZPoly::new(vec![big.clone(), ExactInt::from(-3), big.clone()]);
        let b = ZPoly::from_i64(&[1, 2, 3]);
        let expect = ZPoly::new(vec![
            big.clone(),
            &big * 2 - 3,
            &big * 3 - 6 + &big,
            &big * 2 - 9,
            &big * 3,
        ]);
        assert_eq!(a.mul(&b), expect);
        assert_eq!(b.mul(&a), expect);
    }

    #[test]
    fn cyclotomic_divisions() {
        // 1 + x + x^2 = (1 - x^3)/(1 - x)
        let p = ZPoly::from_i64(&[1, 0, 0, -1]);
        assert_eq!(p.div_one_minus_xk(1).unwrap(), ZPoly::from_i64(&[1, 1, 1]));
        assert!(ZPoly::from_i64(&[1, 1]).div_one_minus_xk(1).is_err());
        assert_eq!(p.div_linear(&ExactInt::one()).unwrap(), ZPoly::from_i64(&[-1, -1, -1]));
        assert!(ZPoly::from_i64(&[1, 1]).div_linear(&ExactInt::one()).is_err());
    }

    #[test]
    fn shifts() {
        let p = ZPoly::from_i64(&[0, 0, 0, 1]);
        assert_eq!(p.taylor_shift(&ExactInt::one()), ZPoly::from_i64(&[1, 3, 3, 1]));
        let c = p.shifted_coeffs_at_one(2);
        assert_eq!(c, vec![ExactInt::from(1), ExactInt::from(3)]);
    }

    proptest! {
        #[test]
        fn mul_div_round_trip(a in prop::collection::vec(-50i64..50, 1..12), k in 1usize..5) {
            let p = ZPoly::from_i64(&a);
            let m = p.mul_one_minus_xk(k);
            prop_assert_eq!(m.div_one_minus_xk(k).unwrap(), p.clone());
            let lin = ZPoly::from_i64(&[-3, 1]);
            prop_assert_eq!(p.mul(&lin).div_linear(&ExactInt::from(3)).unwrap(), p.clone());
        }

        #[test]
        fn partial_shift_matches_full(a in prop::collection::vec(-50i64..50, 1..12), k in 1usize..6) {
            let p = ZPoly::from_i64(&a);
            let full = p.taylor_shift(&ExactInt::one());
            let part = p.shifted_coeffs_at_one(k);
            for j in 0..k {
                prop_assert_eq!(&part[j], &full.coeff(j));
            }
        }
    }
}
