//! Word-size prime field arithmetic and polynomial reconstruction by
//! evaluation, interpolation and Chinese remaindering.
//!
//! Used internally to compute large integer polynomials whose exact rational
//! generating-function route would be too slow. Every reconstruction is
//! verified at extra random points and stabilised across at least two primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let f = Fp { p: n };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = f.pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = f.mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, in decreasing order.
pub fn large_primes() -> impl Iterator<Item = u64> {
    let mut n = (1u64 << 62) - 1;
    std::iter::from_fn(move || {
        while !is_prime(n) {
            n -= 2;
        }
        let p = n;
        n -= 2;
        Some(p)
    })
}

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Power with a signed exponent; `a` must be nonzero when `e < 0`.
    pub fn pow_i(&self, a: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inv(a).expect("nonzero base"), e.unsigned_abs())
        }
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        Some(self.pow(a, self.p - 2))
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// Evaluates `Σ c_i x^i`.
    pub fn eval(&self, c: &[u64], x: u64) -> u64 {
        c.iter().rev().fold(0, |acc, &ci| self.add(self.mul(acc, x), ci))
    }

    /// Monomial-basis coefficients of the unique polynomial of degree < n through n points.
    pub fn interpolate(&self, xs: &[u64], ys: &[u64]) -> Result<Vec<u64>> {
        let n = xs.len();
        assert_eq!(n, ys.len());
        // Newton divided differences
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = self.sub(xs[i], xs[i - j]);
                let inv = self
                    .inv(den)
                    .ok_or_else(|| Error::Invalid("repeated interpolation node".into()))?;
                dd[i] = self.mul(self.sub(dd[i], dd[i - 1]), inv);
            }
        }
        // expand the Newton form
        let mut c = vec![0u64; n];
        for i in (0..n).rev() {
            // c = c * (x - xs[i]) + dd[i]
            let mut next = vec![0u64; n];
            for k in 0..n - 1 {
                if c[k] != 0 {
                    next[k + 1] = self.add(next[k + 1], c[k]);
                    next[k] = self.sub(next[k], self.mul(c[k], xs[i]));
                }
            }
            next[0] = self.add(next[0], dd[i]);
            c = next;
        }
        Ok(c)
    }

    /// Dense truncated power series inverse, `a[0]` must be nonzero.
    pub fn series_inv(&self, a: &[u64], n: usize) -> Option<Vec<u64>> {
        let inv0 = self.inv(*a.first()?)?;
        let mut b = vec![0u64; n];
        if n == 0 {
            return Some(b);
        }
        b[0] = inv0;
        for k in 1..n {
            let mut s = 0;
            for j in 1..=k.min(a.len() - 1) {
                s = self.add(s, self.mul(a[j], b[k - j]));
            }
            b[k] = self.neg(self.mul(s, inv0));
        }
        Some(b)
    }
}

/// Dense multivariate series over F_p, indexed by a box `0 <= u <= caps`.
#[derive(Clone, Debug)]
pub struct BoxSeries {
    pub caps: Vec<usize>,
    pub coeffs: Vec<u64>,
}

impl BoxSeries {
    pub fn zeros(caps: &[usize]) -> Self {
        let size = caps.iter().map(|c| c + 1).product();
        BoxSeries { caps: caps.to_vec(), coeffs: vec![0; size] }
    }

    pub fn index(&self, u: &[usize]) -> usize {
        u.iter().zip(&self.caps).fold(0, |acc, (&ui, &c)| acc * (c + 1) + ui)
    }

    pub fn multi_index(&self, mut idx: usize) -> Vec<usize> {
        let mut u = vec![0; self.caps.len()];
        for i in (0..self.caps.len()).rev() {
            u[i] = idx % (self.caps[i] + 1);
            idx /= self.caps[i] + 1;
        }
        u
    }

    /// Formal logarithm; the constant term must be 1.
    ///
    /// Uses `|u| b_u = |u| a_u - Σ_{0<c<u} |c| b_c a_{u-c}` with `|u|` the total degree.
    pub fn log(&self, f: &Fp) -> Result<BoxSeries> {
        if self.coeffs[0] != 1 {
            return Err(Error::ConstantTerm("log needs constant term 1".into()));
        }
        let n = self.coeffs.len();
        let idx: Vec<Vec<usize>> = (0..n).map(|i| self.multi_index(i)).collect();
        let deg: Vec<u64> = idx.iter().map(|u| u.iter().sum::<usize>() as u64).collect();
        let mut b = vec![0u64; n];
        for i in 1..n {
            let u = &idx[i];
            let mut s = f.mul(deg[i] % f.p, self.coeffs[i]);
            for j in 1..i {
                if b[j] == 0 {
                    continue;
                }
                let c = &idx[j];
                if c.iter().zip(u).any(|(ci, ui)| ci > ui) {
                    continue;
                }
                let d: Vec<usize> = u.iter().zip(c).map(|(ui, ci)| ui - ci).collect();
                let a = self.coeffs[self.index(&d)];
                if a != 0 {
                    s = f.sub(s, f.mul(f.mul(deg[j] % f.p, b[j]), a));
                }
            }
            let inv = f.inv(deg[i] % f.p).ok_or_else(|| Error::Invalid("characteristic too small".into()))?;
            b[i] = f.mul(s, inv);
        }
        Ok(BoxSeries { caps: self.caps.clone(), coeffs: b })
    }
}

/// Incremental Chinese remaindering of a vector of integers with symmetric representatives.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    modulus: BigInt,
    values: Vec<BigInt>,
}

impl CrtAccumulator {
    pub fn new() -> Self {
        CrtAccumulator { modulus: BigInt::one(), values: Vec::new() }
    }

    /// Folds in residues modulo `p`; returns true if the symmetric lift did not change.
    pub fn add(&mut self, f: &Fp, residues: &[u64]) -> bool {
        let p = BigInt::from(f.p);
        if self.values.is_empty() && self.modulus.is_one() {
            self.values = vec![BigInt::zero(); residues.len()];
        }
        if self.values.len() < residues.len() {
            self.values.resize(residues.len(), BigInt::zero());
        }
        let m_inv = f.inv(f.from_bigint(&self.modulus)).expect("distinct primes");
        let new_mod = &self.modulus * &p;
        let half = &new_mod >> 1;
        let mut stable = residues.len() == self.values.len();
        for (i, v) in self.values.iter_mut().enumerate() {
            let r = residues.get(i).copied().unwrap_or(0);
            let cur = f.from_bigint(v);
            let t = f.mul(f.sub(r, cur), m_inv);
            if t != 0 {
                let mut nv = &*v + &self.modulus * BigInt::from(t);
                // symmetric representative in (-M/2, M/2]
                nv = nv.mod_floor(&new_mod);
                if nv > half {
                    nv -= &new_mod;
                }
                if nv != *v {
                    stable = false;
                }
                *v = nv;
            }
        }
        self.modulus = new_mod;
        stable
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn modulus_bits(&self) -> u64 {
        self.modulus.bits()
    }
}

impl Default for CrtAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

const MAX_PRIMES: usize = 64;

fn trim_bigints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn sample_points(rng: &mut ChaCha8Rng, f: &Fp, n: usize) -> Vec<u64> {
    let mut xs: Vec<u64> = Vec::with_capacity(n);
    while xs.len() < n {
        let x = rng.gen_range(2..f.p - 1);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    xs
}

/// Reconstructs an integer polynomial of degree at most `degree_bound` from its values mod p.
///
/// `eval(f, x)` returns the value at `x` or `None` when `x` is a bad point
/// (e.g. a pole of an intermediate expression); bad points are resampled.
/// The bound doubles on a failed verification, up to `max_degree`.
pub fn reconstruct_univariate<F>(eval: F, degree_bound: usize, max_degree: usize, seed: u64) -> Result<Vec<BigInt>>
where
    F: Fn(&Fp, u64) -> Option<u64> + Sync,
{
    let mut d = degree_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'degree: loop {
        let mut crt = CrtAccumulator::new();
        for (count, p) in large_primes().enumerate() {
            if count >= MAX_PRIMES {
                return Err(Error::NonPolynomial("coefficients did not stabilise".into()));
            }
            let f = Fp::new(p);
            let (xs, ys) = loop {
                let xs = sample_points(&mut rng, &f, d + 3);
                let ys: Vec<Option<u64>> = xs.par_iter().map(|&x| eval(&f, x)).collect();
                if ys.iter().all(Option::is_some) {
                    break (xs, ys.into_iter().map(Option::unwrap).collect::<Vec<_>>());
                }
            };
            let c = f.interpolate(&xs[..d + 1], &ys[..d + 1])?;
            let ok = (d + 1..d + 3).all(|i| f.eval(&c, xs[i]) == ys[i]);
            if !ok {
                if d >= max_degree {
                    return Err(Error::NonPolynomial(format!("degree exceeds {max_degree}")));
                }
                d = (2 * d).min(max_degree);
                continue 'degree;
            }
            let stable = crt.add(&f, &c);
            if stable && count >= 1 {
                return Ok(trim_bigints(crt.values().to_vec()));
            }
        }
    }
}

/// Two-variable analogue of [`reconstruct_univariate`]; returns `c[i][j]` for `x^i y^j`.
pub fn reconstruct_bivariate<F>(eval: F, degree_bound: usize, max_degree: usize, seed: u64) -> Result<Vec<Vec<BigInt>>>
where
    F: Fn(&Fp, u64, u64) -> Option<u64> + Sync,
{
    let mut d = degree_bound.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'degree: loop {
        let mut crt = CrtAccumulator::new();
        let n = d + 1;
        for (count, p) in large_primes().enumerate() {
            if count >= MAX_PRIMES {
                return Err(Error::NonPolynomial("coefficients did not stabilise".into()));
            }
            let f = Fp::new(p);
            let (xs, ys, grid) = loop {
                let xs = sample_points(&mut rng, &f, n);
                let ys = sample_points(&mut rng, &f, n);
                let grid: Vec<Option<u64>> = (0..n * n)
                    .into_par_iter()
                    .map(|k| eval(&f, xs[k / n], ys[k % n]))
                    .collect();
                if grid.iter().all(Option::is_some) {
                    break (xs, ys, grid.into_iter().map(Option::unwrap).collect::<Vec<_>>());
                }
            };
            // interpolate in y for each x-row, then in x for each y-coefficient
            let rows: Vec<Vec<u64>> = (0..n)
                .into_par_iter()
                .map(|i| f.interpolate(&ys, &grid[i * n..(i + 1) * n]))
                .collect::<Result<_>>()?;
            let coeffs: Vec<Vec<u64>> = (0..n)
                .into_par_iter()
                .map(|j| {
                    let col: Vec<u64> = rows.iter().map(|r| r[j]).collect();
                    f.interpolate(&xs, &col)
                })
                .collect::<Result<_>>()?;
            // coeffs[j][i] is the coefficient of x^i y^j
            let mut ok = true;
            for _ in 0..3 {
                let (x, y, expect) = loop {
                    let (x, y) = (rng.gen_range(2..f.p - 1), rng.gen_range(2..f.p - 1));
                    if let Some(v) = eval(&f, x, y) {
                        break (x, y, v);
                    }
                };
                let ycoef: Vec<u64> = coeffs.iter().map(|cx| f.eval(cx, x)).collect();
                if f.eval(&ycoef, y) != expect {
                    ok = false;
                    break;
                }
            }
            if !ok {
                if d >= max_degree {
                    return Err(Error::NonPolynomial(format!("degree exceeds {max_degree}")));
                }
                d = (2 * d).min(max_degree);
                continue 'degree;
            }
            let mut flat = Vec::with_capacity(n * n);
            for i in 0..n {
                for cy in &coeffs {
                    flat.push(cy[i]);
                }
            }
            let stable = crt.add(&f, &flat);
            if stable && count >= 1 {
                let vals = crt.values();
                let mut out: Vec<Vec<BigInt>> = (0..n).map(|i| vals[i * n..(i + 1) * n].to_vec()).collect();
                for row in out.iter_mut() {
                    *row = trim_bigints(std::mem::take(row));
                }
                while out.last().is_some_and(|r| r.is_empty()) {
                    out.pop();
                }
                return Ok(out);
            }
        }
    }
}

/// True if every value is nonnegative.
pub fn all_nonnegative(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
