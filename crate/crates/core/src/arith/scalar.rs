use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision integer. Every Betti number and count lives here.
pub type ExactInt = BigInt;

/// Reduced arbitrary-precision rational (denominator positive).
pub type ExactRat = BigRational;

pub fn int(n: i64) -> ExactInt {
    ExactInt::from(n)
}

pub fn rat(n: i64, d: i64) -> ExactRat {
    ExactRat::new(ExactInt::from(n), ExactInt::from(d))
}

pub fn rat_from_int(n: ExactInt) -> ExactRat {
    ExactRat::from_integer(n)
}

/// Exact binomial coefficient `n choose k`.
pub fn big_binomial(n: i64, k: i64) -> Result<ExactInt> {
    if n < 0 || k < 0 || k > n {
        return Err(Error::OutOfRange(format!("binomial({n}, {k})")));
    }
    Ok(binomial_unchecked(n as u64, k as u64))
}

pub(crate) fn binomial_unchecked(n: u64, k: u64) -> ExactInt {
    if k > n {
        return ExactInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    ExactInt::from(acc)
}

/// Binomial coefficient with a big top argument, `m choose k`.
pub fn factorial(n: u64) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, i| acc * i)
}

/// Converts a ratio of big integers to `f64` without overflowing on huge operands.
pub fn ratio_to_f64(num: &ExactInt, den: &ExactInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    // keep ~60 significant bits of each operand
    let ns = (nb - 60).max(0);
    let ds = (db - 60).max(0);
    let n = (num >> ns as usize).to_f64().unwrap_or(f64::NAN);
    let d = (den >> ds as usize).to_f64().unwrap_or(f64::NAN);
    n / d * 2f64.powi((ns - ds) as i32)
}

pub fn rat_to_f64(r: &ExactRat) -> f64 {
    ratio_to_f64(r.numer(), r.denom())
}

pub fn int_to_f64(n: &ExactInt) -> f64 {
    ratio_to_f64(n, &ExactInt::one())
}

/// Least common multiple of the denominators of `values`.
/// Möbius function.
pub fn moebius(k: u64) -> i64 {
    assert!(k >= 1, "moebius is defined for k >= 1");
    let mut n = k;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize, k: usize) -> ExactInt {
        let mut row = vec![ExactInt::one()];
        for _ in 0..n {
            let mut next = vec![ExactInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row[k].clone()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(big_binomial(2, 1).unwrap(), int(2));
        assert_eq!(big_binomial(17, 0).unwrap(), int(1));
        let expected: ExactInt = "90548514656103281165404177077484163874504589675413336841320"
            .parse()
            .unwrap();
        assert_eq!(big_binomial(200, 100).unwrap(), expected);
        assert_eq!(pascal(200, 100), expected);
        assert!(big_binomial(3, 4).is_err());
        assert!(big_binomial(-1, 0).is_err());
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..40usize {
            for k in 0..=n {
                assert_eq!(big_binomial(n as i64, k as i64).unwrap(), pascal(n, k));
            }
        }
    }

    #[test]
    fn moebius_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, &m) in expect.iter().enumerate() {
            assert_eq!(moebius(i as u64 + 1), m, "mu({})", i + 1);
        }
    }

    #[test]
    fn ratio_to_f64_handles_huge_values() {
        let a = factorial(300);
        let b = factorial(299);
        assert!((ratio_to_f64(&a, &b) - 300.0).abs() < 1e-9);
        assert!((int_to_f64(&int(12345)) - 12345.0).abs() < 1e-9);
    }
}
