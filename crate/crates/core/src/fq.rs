//! Point counts of moment-map fibres over prime fields.
//!
//! For a framed quiver the representation space is
//! `𝕍 = ⊕_{a: i→j} Hom(F^{v_i}, F^{v_j}) ⊕ ⊕_i Hom(F^{w_i}, F^{v_i})` and the moment map on
//! `𝕍 × 𝕍*` is `μ_i = Σ_{h(a)=i} x_a y_a − Σ_{t(a)=i} y_a x_a + I_i J_i`, which is
//! `[A,B] + IJ` for the framed Jordan quiver.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::scalar::{int, rat_from_int};
use crate::arith::{ExactInt, ExactRat, UniLaurent};
use crate::error::{Error, Result};
use crate::families::{BettiPoly, Quiver};
use crate::modp::is_prime;

/// Largest `q^{2 dim 𝕍}` the brute-force count will enumerate.
pub const BRUTE_FORCE_CAP: u128 = 100_000_000;
/// Largest `|𝔤| = q^{Σ v_i²}` the character sum will enumerate.
pub const FOURIER_CAP: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqConfig {
    pub q: u64,
    pub quiver: Quiver,
    /// `ξ_i` acts as `ξ_i · Id` on vertex `i`.
    pub xi: Vec<i64>,
}

impl FqConfig {
    pub fn new(q: u64, quiver: Quiver, xi: Vec<i64>) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::Invalid(format!("q = {q} is not prime")));
        }
        if xi.len() != quiver.vertices {
            return Err(Error::Invalid(format!("xi has length {}, expected {}", xi.len(), quiver.vertices)));
        }
        Ok(FqConfig { q, quiver, xi })
    }

    /// The same scalar at every vertex.
    pub fn central(q: u64, quiver: Quiver, xi: i64) -> Result<Self> {
        let n = quiver.vertices;
        Self::new(q, quiver, vec![xi; n])
    }

    fn xi_mod(&self, i: usize) -> u64 {
        self.xi[i].rem_euclid(self.q as i64) as u64
    }
}

/// One matrix block of `𝕍`: rows live at `dst`, columns at `src`.
#[derive(Clone, Copy, Debug)]
struct Block {
    /// `None` for a framing block `W_i → V_i`.
    src: Option<usize>,
    dst: usize,
    rows: usize,
    cols: usize,
    offset: usize,
}

struct Layout {
    blocks: Vec<Block>,
    dim: usize,
}

fn layout(q: &Quiver) -> Layout {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for &(a, b) in &q.edges {
        let (rows, cols) = (q.v[b] as usize, q.v[a] as usize);
        blocks.push(Block { src: Some(a), dst: b, rows, cols, offset });
        offset += rows * cols;
    }
    for i in 0..q.vertices {
        let (rows, cols) = (q.v[i] as usize, q.w[i] as usize);
        blocks.push(Block { src: None, dst: i, rows, cols, offset });
        offset += rows * cols;
    }
    Layout { blocks, dim: offset }
}

fn checked_pow(q: u64, e: usize) -> Option<u128> {
    (q as u128).checked_pow(e as u32)
}

/// `dim 𝕍`.
pub fn rep_dimension(q: &Quiver) -> usize {
    layout(q).dim
}

/// Number of points of `μ^{-1}(ξ)` by enumerating `𝕍 × 𝕍*`.
pub fn count_fiber_bruteforce(cfg: &FqConfig) -> Result<ExactInt> {
    let lay = layout(&cfg.quiver);
    let q = cfg.q;
    let total = checked_pow(q, 2 * lay.dim).filter(|&s| s <= BRUTE_FORCE_CAP).ok_or_else(|| {
        Error::SizeCap(format!("q^(2 dim V) = {q}^{} exceeds {BRUTE_FORCE_CAP}", 2 * lay.dim))
    })?;
    let v: Vec<usize> = cfg.quiver.v.iter().map(|&x| x as usize).collect();
    let target: Vec<u64> = (0..v.len()).map(|i| cfg.xi_mod(i)).collect();
    let d = lay.dim;
    // split the outermost coordinate across workers; sums are order independent
    let outer = if d == 0 { 1 } else { q };
    let inner = total / outer as u128;
    let count: u64 = (0..outer)
        .into_par_iter()
        .map(|first| {
            let mut state = vec![0u64; 2 * d];
            if d > 0 {
                state[0] = first;
            }
            let mut hits = 0u64;
            let mut mu: Vec<Vec<u64>> = v.iter().map(|&n| vec![0; n * n]).collect();
            for _ in 0..inner {
                moment_map(&lay, &v, q, &state, &mut mu);
                if mu.iter().enumerate().all(|(i, m)| is_scalar(m, v[i], target[i])) {
                    hits += 1;
                }
                // odometer over all coordinates but the first
                for k in 1..2 * d {
                    state[k] += 1;
                    if state[k] < q {
                        break;
                    }
                    state[k] = 0;
                }
            }
            hits
        })
        .sum();
    Ok(int(count as i64))
}

fn is_scalar(m: &[u64], n: usize, c: u64) -> bool {
    (0..n).all(|r| (0..n).all(|s| m[r * n + s] == if r == s { c } else { 0 }))
}

/// `x` is `state[..d]`, `y` is `state[d..]`; the dual block of an `r × c` block is `c × r`.
fn moment_map(lay: &Layout, v: &[usize], q: u64, state: &[u64], mu: &mut [Vec<u64>]) {
    for m in mu.iter_mut() {
        m.iter_mut().for_each(|x| *x = 0);
    }
    let d = lay.dim;
    for b in &lay.blocks {
        let x = &state[b.offset..b.offset + b.rows * b.cols];
        let y = &state[d + b.offset..d + b.offset + b.rows * b.cols];
        // x y: rows × rows, added at dst
        let n = v[b.dst];
        for r in 0..b.rows {
            for s in 0..b.rows {
                let mut acc = 0u64;
                for k in 0..b.cols {
                    acc += x[r * b.cols + k] * y[k * b.rows + s];
                }
                mu[b.dst][r * n + s] = (mu[b.dst][r * n + s] + acc) % q;
            }
        }
        if let Some(src) = b.src {
            // − y x: cols × cols, at src
            let n = v[src];
            for r in 0..b.cols {
                for s in 0..b.cols {
                    let mut acc = 0u64;
                    for k in 0..b.rows {
                        acc += y[r * b.rows + k] * x[k * b.cols + s];
                    }
                    let cur = mu[src][r * n + s];
                    mu[src][r * n + s] = (cur + q - acc % q) % q;
                }
            }
        }
    }
}

/// Matrix of `ϱ(X)` on `𝕍` for `X = (X_i) ∈ ⊕ gl(v_i)`.
fn rho_matrix(lay: &Layout, v: &[usize], q: u64, xs: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = lay.dim;
    let mut m = vec![vec![0u64; d]; d];
    for b in &lay.blocks {
        let nd = v[b.dst];
        for r in 0..b.rows {
            for c in 0..b.cols {
                let col = b.offset + r * b.cols + c;
                // X_dst · e_{rc} contributes X_dst[r', r] at (r', c)
                for r2 in 0..b.rows {
                    let row = b.offset + r2 * b.cols + c;
                    m[row][col] = (m[row][col] + xs[b.dst][r2 * nd + r]) % q;
                }
                // − e_{rc} · X_src contributes −X_src[c, c'] at (r, c')
                if let Some(src) = b.src {
                    let ns = v[src];
                    for c2 in 0..b.cols {
                        let row = b.offset + r * b.cols + c2;
                        m[row][col] = (m[row][col] + q - xs[src][c * ns + c2]) % q;
                    }
                }
            }
        }
    }
    m
}

fn rank_mod(mut m: Vec<Vec<u64>>, q: u64) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let inv = |a: u64| -> u64 {
        let mut r = 1u64;
        let (mut b, mut e) = (a % q, q - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % q;
            }
            b = b * b % q;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        let iv = inv(m[rank][c]);
        for k in c..cols {
            m[rank][k] = m[rank][k] * iv % q;
        }
        for r in 0..rows {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for k in c..cols {
                    m[r][k] = (m[r][k] + q * q - f * m[rank][k]) % q;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// `log_q a_ϱ(X) = dim ker ϱ(X)`.
pub fn kernel_dimension(quiver: &Quiver, q: u64, xs: &[Vec<u64>]) -> usize {
    let lay = layout(quiver);
    let v: Vec<usize> = quiver.v.iter().map(|&x| x as usize).collect();
    lay.dim - rank_mod(rho_matrix(&lay, &v, q, xs), q)
}

fn unpack(mut idx: u64, q: u64, v: &[usize]) -> Vec<Vec<u64>> {
    v.iter()
        .map(|&n| {
            (0..n * n)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    d
                })
                .collect()
        })
        .collect()
}

/// Number of points of `μ^{-1}(ξ)` as `|𝔤|^{-1} |𝕍| Σ_X a_ϱ(X) Ψ(⟨X,ξ⟩)`.
///
/// `a_ϱ(cX) = a_ϱ(X)` for `c ≠ 0`, so the partial sums `S_t` over `⟨X,ξ⟩ = t` agree for
/// all `t ≠ 0` and the character sum is `S_0 − S_1` (or `S_0` when `ξ = 0`).
pub fn count_fiber_fourier(cfg: &FqConfig) -> Result<ExactInt> {
    let q = cfg.q;
    let quiver = &cfg.quiver;
    let lay = layout(quiver);
    let v: Vec<usize> = quiver.v.iter().map(|&x| x as usize).collect();
    let gdim: usize = v.iter().map(|n| n * n).sum();
    let size = checked_pow(q, gdim)
        .filter(|&s| s <= FOURIER_CAP)
        .ok_or_else(|| Error::SizeCap(format!("|g| = {q}^{gdim} exceeds {FOURIER_CAP}")))?;
    let xi: Vec<u64> = (0..v.len()).map(|i| cfg.xi_mod(i)).collect();
    // per class t: Σ q^{dim ker}, bucketed by kernel dimension to stay exact
    let buckets: Vec<Vec<u64>> = (0..size as u64)
        .into_par_iter()
        .fold(
            || vec![vec![0u64; lay.dim + 1]; q as usize],
            |mut acc, idx| {
                let xs = unpack(idx, q, &v);
                let t = xs
                    .iter()
                    .enumerate()
                    .map(|(i, x)| (0..v[i]).map(|r| x[r * v[i] + r]).sum::<u64>() % q * xi[i] % q)
                    .sum::<u64>()
                    % q;
                let k = lay.dim - rank_mod(rho_matrix(&lay, &v, q, &xs), q);
                acc[t as usize][k] += 1;
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; lay.dim + 1]; q as usize],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    for (u, w) in x.iter_mut().zip(y) {
                        *u += w;
                    }
                }
                a
            },
        );
    let qi = int(q as i64);
    let s: Vec<ExactInt> = buckets
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, &n)| int(n as i64) * num_traits::pow(qi.clone(), k)).sum())
        .collect();
    let character_sum = if xi.iter().all(|&x| x == 0) {
        s.iter().sum::<ExactInt>()
    } else {
        if let Some(t) = (2..q as usize).find(|&t| s[t] != s[1]) {
            return Err(Error::Identity(format!("S_{t} = {} differs from S_1 = {}", s[t], s[1])));
        }
        &s[0] - &s[1]
    };
    let num = character_sum * num_traits::pow(qi.clone(), lay.dim);
    let den = num_traits::pow(qi, gdim);
    if !(&num % &den).is_zero() {
        return Err(Error::Identity(format!("character sum {num} is not divisible by |g| = {den}")));
    }
    Ok(num / den)
}

/// `|GL_n(F_q)| = Π_{k<n} (q^n − q^k)`.
pub fn gl_order(n: u32, q: u64) -> ExactInt {
    let qi = int(q as i64);
    let qn = num_traits::pow(qi.clone(), n as usize);
    (0..n as usize).map(|k| &qn - num_traits::pow(qi.clone(), k)).product()
}

/// Which counting route [`check_katz`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    BruteForce,
    Fourier,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KatzReport {
    pub primes: Vec<u64>,
    pub fiber_counts: Vec<ExactInt>,
    pub quotient_counts: Vec<ExactInt>,
    /// Interpolated count polynomial `𝒫(q)`.
    pub count_polynomial: UniLaurent,
    pub e_polynomial: UniLaurent,
    pub pass: bool,
}

/// Exact Lagrange interpolation through `(x_i, y_i)`.
pub fn interpolate(xs: &[ExactInt], ys: &[ExactInt], var: &str) -> Result<UniLaurent> {
    let mut out = UniLaurent::zero(var);
    for (i, xi) in xs.iter().enumerate() {
        let mut basis = UniLaurent::constant(var, rat_from_int(ys[i].clone()));
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let d = xi - xj;
            if d.is_zero() {
                return Err(Error::Invalid(format!("repeated interpolation node {xi}")));
            }
            let lin = UniLaurent::from_terms(var, [(0, rat_from_int(-xj.clone())), (1, ExactRat::one())]);
            basis = basis.checked_mul(&lin)?.scale(&ExactRat::new(ExactInt::one(), d));
        }
        out = out.checked_add(&basis)?;
    }
    Ok(out)
}

/// Counts `μ^{-1}(ξ)/G` over the given primes, interpolates, and compares with `E(q)` of `expected`.
///
/// The last prime is held out to confirm the interpolant; a quotient that is not an
/// integer means `G` does not act freely.
pub fn check_katz(
    quiver: &Quiver,
    xi: &[i64],
    primes: &[u64],
    method: CountMethod,
    expected: &BettiPoly,
) -> Result<KatzReport> {
    if primes.len() < 2 {
        return Err(Error::Invalid("at least two primes are needed".into()));
    }
    let mut fiber_counts = Vec::new();
    let mut quotient_counts = Vec::new();
    for &q in primes {
        let cfg = FqConfig::new(q, quiver.clone(), xi.to_vec())?;
        let n = match method {
            CountMethod::BruteForce => count_fiber_bruteforce(&cfg)?,
            CountMethod::Fourier => count_fiber_fourier(&cfg)?,
        };
        let g: ExactInt = quiver.v.iter().map(|&k| gl_order(k, q)).product();
        if !(&n % &g).is_zero() {
            return Err(Error::NonFree(format!("fiber count {n} at q = {q} is not divisible by |G| = {g}")));
        }
        quotient_counts.push(&n / &g);
        fiber_counts.push(n);
    }
    let xs: Vec<ExactInt> = primes.iter().map(|&p| int(p as i64)).collect();
    let k = primes.len() - 1;
    let poly = interpolate(&xs[..k], &quotient_counts[..k], "q")?;
    let held_out = poly.eval(&rat_from_int(xs[k].clone()))?;
    if held_out != rat_from_int(quotient_counts[k].clone()) || !poly.is_integral() {
        return Err(Error::NonPolynomial(format!(
            "counts {quotient_counts:?} at {primes:?} are not fitted by a polynomial of degree < {k}"
        )));
    }
    let e = expected.e_polynomial();
    let pass = poly == e;
    Ok(KatzReport { primes: primes.to_vec(), fiber_counts, quotient_counts, count_polynomial: poly, e_polynomial: e, pass })
}

/// The fixed corpus of small configurations: `(quiver, ξ)`.
pub fn small_corpus() -> Vec<(Quiver, Vec<i64>)> {
    let mut out = Vec::new();
    for xi in [1, 0] {
        for w in 1..=3 {
            out.push((Quiver::a1(1, w), vec![xi]));
        }
        out.push((Quiver::jordan(1, 1), vec![xi]));
        let a2 = Quiver::new(2, vec![(0, 1)], vec![1, 1], Some(vec![1, 0])).expect("valid quiver");
        out.push((a2, vec![xi, xi]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::poincare_nakajima;

    fn cfg(q: u64, quiver: Quiver, xi: i64) -> FqConfig {
        FqConfig::central(q, quiver, xi).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(count_fiber_bruteforce(&cfg(2, Quiver::a1(1, 2), 1)).unwrap(), int(6));
        assert_eq!(count_fiber_bruteforce(&cfg(3, Quiver::a1(1, 1), 1)).unwrap(), int(2));
        assert_eq!(count_fiber_bruteforce(&cfg(2, Quiver::a1(1, 1), 0)).unwrap(), int(3));
    }

    #[test]
    fn inner_product_count() {
        // #{(i,j) ∈ F_q^n × F_q^n : j·i = c} = q^{2n-1} − q^{n-1} for c ≠ 0
        for q in [2u64, 3, 5] {
            for n in 1..=3u32 {
                let expect = int(q.pow(2 * n - 1) as i64 - q.pow(n - 1) as i64);
                assert_eq!(count_fiber_bruteforce(&cfg(q, Quiver::a1(1, n), 1)).unwrap(), expect);
                assert_eq!(count_fiber_fourier(&cfg(q, Quiver::a1(1, n), 1)).unwrap(), expect);
            }
        }
    }

    #[test]
    fn fourier_matches_brute_force_on_corpus() {
        for (quiver, xi) in small_corpus() {
            for q in [2u64, 3, 5] {
                let c = FqConfig::new(q, quiver.clone(), xi.clone()).unwrap();
                assert_eq!(count_fiber_bruteforce(&c).unwrap(), count_fiber_fourier(&c).unwrap(), "{c:?}");
            }
        }
    }

    #[test]
    fn kernel_sizes_match_enumeration() {
        let quiver = Quiver::new(1, vec![(0, 0)], vec![2], Some(vec![1])).unwrap();
        let q = 3u64;
        let lay = layout(&quiver);
        let v = vec![2usize];
        for idx in [0u64, 1, 5, 17, 40, 80] {
            let xs = unpack(idx, q, &v);
            let m = rho_matrix(&lay, &v, q, &xs);
            let mut kernel = 0;
            for x in 0..q.pow(lay.dim as u32) {
                let vec: Vec<u64> = (0..lay.dim).map(|k| x / q.pow(k as u32) % q).collect();
                if m.iter().all(|row| row.iter().zip(&vec).map(|(a, b)| a * b).sum::<u64>() % q == 0) {
                    kernel += 1;
                }
            }
            assert_eq!(kernel, q.pow(kernel_dimension(&quiver, q, &xs) as u32));
        }
    }

    #[test]
    fn katz_on_small_varieties() {
        let tp1 = poincare_nakajima(&Quiver::a1(1, 2)).unwrap();
        let r = check_katz(&Quiver::a1(1, 2), &[1], &[2, 3, 5, 7], CountMethod::BruteForce, &tp1).unwrap();
        assert!(r.pass);
        assert_eq!(r.count_polynomial, UniLaurent::from_i64_coeffs("q", 1, &[1, 1]));
        let pt = poincare_nakajima(&Quiver::a1(1, 1)).unwrap();
        assert!(check_katz(&Quiver::a1(1, 1), &[1], &[2, 3, 5], CountMethod::BruteForce, &pt).unwrap().pass);
        let c2 = poincare_nakajima(&Quiver::jordan(1, 1)).unwrap();
        let r = check_katz(&Quiver::jordan(1, 1), &[1], &[2, 3, 5, 7], CountMethod::Fourier, &c2).unwrap();
        assert!(r.pass);
        assert_eq!(r.count_polynomial, UniLaurent::from_i64_coeffs("q", 2, &[1]));
    }

    #[test]
    fn katz_on_hilbert_scheme_of_two_points() {
        let quiver = Quiver::jordan(2, 1);
        let p = poincare_nakajima(&quiver).unwrap();
        // tr IJ = 2ξ forces char ≠ 2
        let r = check_katz(&quiver, &[1], &[3, 5, 7, 11, 13, 17], CountMethod::Fourier, &p).unwrap();
        assert!(r.pass, "{:?}", r.count_polynomial);
        let at2 = count_fiber_fourier(&cfg(2, quiver, 1)).unwrap();
        assert_ne!(at2, int(24) * gl_order(2, 2));
    }

    #[test]
    fn non_free_action_is_reported() {
        let p = poincare_nakajima(&Quiver::a1(1, 2)).unwrap();
        let r = check_katz(&Quiver::a1(1, 2), &[0], &[2, 3, 5], CountMethod::BruteForce, &p);
        assert!(matches!(r, Err(Error::NonFree(_))), "{r:?}");
    }

    #[test]
    fn caps_are_enforced() {
        assert!(matches!(count_fiber_bruteforce(&cfg(5, Quiver::jordan(2, 1), 1)), Err(Error::SizeCap(_))));
        assert!(FqConfig::central(4, Quiver::a1(1, 1), 1).is_err());
    }
}
