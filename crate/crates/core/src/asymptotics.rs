//! Discrete measures of Betti distributions, their moments, and the reference limit laws.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::scalar::{factorial, int, rat, rat_from_int, rat_to_f64, ratio_to_f64};
use crate::arith::{big_binomial, ExactInt, ExactRat, UniLaurent};
use crate::error::{Error, Result};
use crate::families::{q_binomial, BettiPoly};
use crate::graph::{complete_graph_r, connected_count_table};
use crate::partitions::enum_partitions;

/// Machine-readable outcome of a numerical or exact check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub values: Vec<Value>,
    pub pass: bool,
    pub tolerance: f64,
}

impl CheckReport {
    pub fn new(check: &str, params: Value, values: Vec<Value>, pass: bool, tolerance: f64) -> Self {
        let params = match params {
            Value::Object(m) => m.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        CheckReport { check: check.into(), params, values, pass, tolerance }
    }
}

/// `p/q`, or `p` for integers.
pub fn rat_str(r: &ExactRat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense truncated power series over `ExactRat`; index = exponent.
mod dense {
    use super::*;

    pub fn mul(a: &[ExactRat], b: &[ExactRat], n: usize) -> Vec<ExactRat> {
        let mut out = vec![ExactRat::zero(); n];
        for (i, x) in a.iter().enumerate().take(n) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    pub fn pow(a: &[ExactRat], k: usize, n: usize) -> Vec<ExactRat> {
        let mut out = vec![ExactRat::zero(); n];
        if n > 0 {
            out[0] = ExactRat::one();
        }
        for _ in 0..k {
            out = mul(&out, a, n);
        }
        out
    }

    /// `exp(g)` for `g_0 = 0`, from `f' = g' f`.
    pub fn exp(g: &[ExactRat], n: usize) -> Vec<ExactRat> {
        let mut f = vec![ExactRat::zero(); n];
        if n == 0 {
            return f;
        }
        f[0] = ExactRat::one();
        for m in 1..n {
            let mut s = ExactRat::zero();
            for k in 1..=m.min(g.len().saturating_sub(1)) {
                s += &g[k] * rat(k as i64, 1) * &f[m - k];
            }
            f[m] = s / rat(m as i64, 1);
        }
        f
    }

    /// `log(f)` for `f_0 = 1`, from `f g' = f'`.
    pub fn log(f: &[ExactRat], n: usize) -> Vec<ExactRat> {
        let mut g = vec![ExactRat::zero(); n];
        let at = |i: usize| f.get(i).cloned().unwrap_or_else(ExactRat::zero);
        for m in 1..n {
            let mut s = at(m) * rat(m as i64, 1);
            for k in 1..m {
                s -= &g[k] * rat(k as i64, 1) * at(m - k);
            }
            g[m] = s / rat(m as i64, 1);
        }
        g
    }
}

/// Point masses `(x, m)` with `m >= 0`, sorted by `x`, no repeated points, no zero masses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteMeasure {
    points: Vec<(ExactRat, ExactRat)>,
}

impl DiscreteMeasure {
    pub fn new(points: impl IntoIterator<Item = (ExactRat, ExactRat)>) -> Result<Self> {
        let mut map: BTreeMap<ExactRat, ExactRat> = BTreeMap::new();
        for (x, m) in points {
            if m.is_negative() {
                return Err(Error::NegativeCoefficient(format!("mass {m} at {x}")));
            }
            *map.entry(x).or_insert_with(ExactRat::zero) += m;
        }
        Ok(DiscreteMeasure { points: map.into_iter().filter(|(_, m)| !m.is_zero()).collect() })
    }

    pub fn dirac(x: ExactRat) -> Self {
        DiscreteMeasure { points: vec![(x, ExactRat::one())] }
    }

    pub fn points(&self) -> &[(ExactRat, ExactRat)] {
        &self.points
    }

    pub fn total_mass(&self) -> ExactRat {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn translate(&self, a: &ExactRat) -> Self {
        DiscreteMeasure { points: self.points.iter().map(|(x, m)| (x + a, m.clone())).collect() }
    }

    /// `M_k = Σ x^k m(x)`.
    pub fn raw_moment(&self, k: u32) -> ExactRat {
        self.points.iter().map(|(x, m)| num_traits::pow(x.clone(), k as usize) * m).sum()
    }
}

/// Mass `e_i` at `i` for `E = Σ e_i q^i`.
pub fn measure_from_poly(e: &UniLaurent) -> Result<DiscreteMeasure> {
    DiscreteMeasure::new(e.terms().iter().map(|(&i, c)| (rat(i, 1), c.clone())))
}

/// The measure of `E(q) = Σ b_{2i} q^{dim − i}`; requires vanishing odd Betti numbers.
pub fn measure_from_betti(p: &BettiPoly) -> Result<DiscreteMeasure> {
    if !p.odd_vanish() {
        return Err(Error::Invalid(format!("{} has odd cohomology; E(q) is not defined", p.family)));
    }
    measure_from_poly(&p.e_polynomial())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentReport {
    pub raw: Vec<ExactRat>,
    pub factorial: Vec<ExactRat>,
    /// `E[((X − mean)/σ)^k]` for `k <= K`, when requested and the variance is positive.
    pub standardized: Option<Vec<f64>>,
}

fn generalized_binomial(x: &ExactRat, k: usize) -> ExactRat {
    let mut acc = ExactRat::one();
    for j in 0..k {
        acc = acc * (x - rat(j as i64, 1)) / rat(j as i64 + 1, 1);
    }
    acc
}

/// Raw, factorial and (optionally) standardized moments up to order `k`.
pub fn moments(mu: &DiscreteMeasure, k: u32, standardize: bool) -> MomentReport {
    let raw: Vec<ExactRat> = (0..=k).map(|j| mu.raw_moment(j)).collect();
    let factorial: Vec<ExactRat> = (0..=k as usize)
        .map(|j| mu.points.iter().map(|(x, m)| generalized_binomial(x, j) * m).sum())
        .collect();
    let standardized = standardize.then(|| standardized_moments(mu, k)).flatten();
    MomentReport { raw, factorial, standardized }
}

/// Central moments of the normalized measure divided by `σ^k`.
pub fn standardized_moments(mu: &DiscreteMeasure, k: u32) -> Option<Vec<f64>> {
    let m0 = mu.total_mass();
    if m0.is_zero() {
        return None;
    }
    let mean = mu.raw_moment(1) / &m0;
    let centered = mu.translate(&-mean);
    let var = centered.raw_moment(2) / &m0;
    if !var.is_positive() {
        return None;
    }
    let sigma = rat_to_f64(&var).sqrt();
    Some((0..=k).map(|j| rat_to_f64(&(centered.raw_moment(j) / &m0)) / sigma.powi(j as i32)).collect())
}

/// `m_k = [η^k] E(1 + η)` for `k <= K`.
pub fn factorial_moments(e: &UniLaurent, k: usize) -> Result<Vec<ExactRat>> {
    let n = k + 1;
    let lo = e.min_exp().unwrap_or(0).min(0);
    // E = q^{lo} P(q) with P a polynomial
    let p = e.shift(-lo);
    let shifted = p.taylor_shift(&ExactRat::one())?;
    let ps: Vec<ExactRat> = (0..n as i64).map(|i| shifted.coeff(i)).collect();
    // (1 + η)^{lo}
    let factor: Vec<ExactRat> = (0..n).map(|j| generalized_binomial(&rat(lo, 1), j)).collect();
    Ok(dense::mul(&ps, &factor, n))
}

/// Moments of `dμ(x + a)` read off `e^{−at} M_μ(t)`.
pub fn shifted_moments(mu: &DiscreteMeasure, a: &ExactRat, k: u32) -> Vec<ExactRat> {
    let n = k as usize + 1;
    let egf: Vec<ExactRat> = (0..n).map(|j| mu.raw_moment(j as u32) / rat_from_int(factorial(j as u64))).collect();
    let damp: Vec<ExactRat> =
        (0..n).map(|j| num_traits::pow(-a.clone(), j) / rat_from_int(factorial(j as u64))).collect();
    dense::mul(&egf, &damp, n).into_iter().enumerate().map(|(j, c)| c * rat_from_int(factorial(j as u64))).collect()
}

/// Additive convolution.
pub fn convolve(a: &DiscreteMeasure, b: &DiscreteMeasure) -> DiscreteMeasure {
    let pts = a.points.iter().flat_map(|(x, m)| b.points.iter().map(move |(y, n)| (x + y, m * n)));
    DiscreteMeasure::new(pts).expect("products of nonnegative masses are nonnegative")
}

/// Moments `M_0..M_K` of the central B-spline `χ^{(r)}`, from the MGF `((e^{t/2} − e^{−t/2})/t)^r`.
pub fn bspline_moments(r: u32, k: u32) -> Result<Vec<ExactRat>> {
    if r == 0 {
        return Err(Error::OutOfRange("r must be positive".into()));
    }
    let n = k as usize + 1;
    // (e^{t/2} − e^{−t/2})/t = Σ_j t^{2j} / (4^j (2j+1)!)
    let base: Vec<ExactRat> = (0..n)
        .map(|i| {
            if i % 2 == 1 {
                ExactRat::zero()
            } else {
                let j = i / 2;
                ExactRat::new(ExactInt::one(), num_traits::pow(int(4), j) * factorial(i as u64 + 1))
            }
        })
        .collect();
    let mgf = dense::pow(&base, r as usize, n);
    Ok(mgf.into_iter().enumerate().map(|(i, c)| c * rat_from_int(factorial(i as u64))).collect())
}

fn relative_error(a: f64, b: f64) -> f64 {
    if b.abs() < 1e-12 {
        (a - b).abs()
    } else {
        ((a - b) / b).abs()
    }
}

/// Compares the Betti distribution of `Gr(r, n+r)` with `χ^{(r)}`.
///
/// Reports the moments of `r!/n^r · e^{−rt/2} E_n(e^{t/n})` and of the same measure scaled
/// to total mass one next to the B-spline moments, and passes when the standardized moments agree within `tolerance` for all `k <= K`.
pub fn grassmann_limit_check(r: u32, n: u32, k: u32, tolerance: f64) -> Result<CheckReport> {
    if r == 0 || r > 4 || n == 0 || n > 400 {
        return Err(Error::OutOfRange(format!("grassmann_limit_check needs 1 <= r <= 4, 1 <= n <= 400; got r={r}, n={n}")));
    }
    let e = q_binomial((n + r) as usize, r as usize)?.to_laurent("q");
    let mu = measure_from_poly(&e)?;
    let norm = rat_from_int(factorial(r as u64)) / rat_from_int(num_traits::pow(int(n as i64), r as usize));
    let scaled = DiscreteMeasure::new(
        mu.points().iter().map(|(x, m)| (x / rat(n as i64, 1) - rat(r as i64, 2), m * &norm)),
    )?;
    let probability = DiscreteMeasure::new(
        mu.points().iter().map(|(x, m)| (x / rat(n as i64, 1) - rat(r as i64, 2), m / mu.total_mass())),
    )?;
    let spline = bspline_moments(r, k)?;
    let spline_mu_var = &spline[2];
    let std_e = standardized_moments(&mu, k).ok_or_else(|| Error::Invalid("degenerate measure".into()))?;
    let sd = rat_to_f64(spline_mu_var).sqrt();
    let mut values = Vec::new();
    let mut pass = true;
    for j in 0..=k {
        let sm = rat_to_f64(&scaled.raw_moment(j));
        let pm = rat_to_f64(&probability.raw_moment(j));
        let bm = rat_to_f64(&spline[j as usize]);
        let std_b = bm / sd.powi(j as i32);
        let err = relative_error(std_e[j as usize], std_b);
        pass &= err <= tolerance;
        values.push(json!({
            "k": j,
            "scaled_moment": sm,
            "bspline_moment": rat_str(&spline[j as usize]),
            "scaled_relative_error": relative_error(sm, bm),
            "normalized_moment": pm,
            "normalized_relative_error": relative_error(pm, bm),
            "standardized_moment": std_e[j as usize],
            "bspline_standardized": std_b,
            "standardized_error": err,
        }));
    }
    Ok(CheckReport::new("grassmann-limit", json!({"r": r, "n": n, "K": k}), values, pass, tolerance))
}

/// `Φ_n(x) = #{λ ⊢ n : l(λ) <= x}` for `x = 0..=n`.
pub fn partition_length_cdf(n: usize) -> Vec<ExactInt> {
    partition_length_cdfs(&[n]).remove(0)
}

/// `Φ_n(x)` at one point.
pub fn partition_length_cdf_at(n: usize, x: usize) -> ExactInt {
    partition_length_cdf(n)[x.min(n)].clone()
}

/// [`partition_length_cdf`] for several `n` with one table: after admitting parts `<= x`,
/// `dp[m]` counts partitions of `m` with largest part `<= x`, which by conjugation is `Φ_m(x)`.
pub fn partition_length_cdfs(ns: &[usize]) -> Vec<Vec<ExactInt>> {
    let max = ns.iter().copied().max().unwrap_or(0);
    let mut dp = vec![ExactInt::zero(); max + 1];
    dp[0] = ExactInt::one();
    let mut out: Vec<Vec<ExactInt>> = ns.iter().map(|&n| vec![ExactInt::zero(); n + 1]).collect();
    for (slot, &n) in out.iter_mut().zip(ns) {
        slot[0] = if n == 0 { ExactInt::one() } else { ExactInt::zero() };
    }
    for x in 1..=max {
        for m in x..=max {
            let add = dp[m - x].clone();
            dp[m] += add;
        }
        for (slot, &n) in out.iter_mut().zip(ns) {
            if x <= n {
                slot[x] = dp[n].clone();
            }
        }
    }
    out
}

/// `c = π/√6`.
pub fn gumbel_c() -> f64 {
    std::f64::consts::PI / 6f64.sqrt()
}

/// `exp(−c^{-1} e^{−cy})`.
pub fn gumbel_cdf(y: f64) -> f64 {
    let c = gumbel_c();
    (-(-c * y).exp() / c).exp()
}

fn sup_distance(cdf: &[f64], g: impl Fn(f64) -> f64) -> f64 {
    let mut sup = 0f64;
    let mut prev = 0f64;
    for (x, &f) in cdf.iter().enumerate() {
        let gx = g(x as f64);
        sup = sup.max((f - gx).abs()).max((prev - gx).abs());
        prev = f;
    }
    sup
}

/// Sup-distance between the partition-length CDF and the Gumbel law, for each `n`.
///
/// Location and scale are fitted from the mean and variance of `l(λ)`; the distances
/// for the fixed constants `α_n = √n` with `β_n = 2c^{-1}√n log n` and with
/// `β_n = (2c)^{-1}√n log n` are reported alongside. Passes when the fitted distance
/// strictly decreases along `ns`.
pub fn gumbel_check(ns: &[usize]) -> Result<CheckReport> {
    if ns.iter().any(|&n| n == 0 || n > 4000) {
        return Err(Error::OutOfRange("gumbel_check needs 1 <= n <= 4000".into()));
    }
    let c = gumbel_c();
    let euler_gamma = 0.577_215_664_901_532_9_f64;
    let mean_y = (euler_gamma - c.ln()) / c;
    let tables = partition_length_cdfs(ns);
    let mut values = Vec::new();
    let mut dists = Vec::new();
    for (&n, table) in ns.iter().zip(&tables) {
        let total = &table[n];
        let cdf: Vec<f64> = table.iter().map(|v| ratio_to_f64(v, total)).collect();
        // mean and variance of l from the point masses
        let (mut m1, mut m2) = (0f64, 0f64);
        for x in 1..=n {
            let p = cdf[x] - cdf[x - 1];
            m1 += p * x as f64;
            m2 += p * (x * x) as f64;
        }
        let alpha = (m2 - m1 * m1).sqrt();
        let beta = m1 - alpha * mean_y;
        let fitted = sup_distance(&cdf, |x| gumbel_cdf((x - beta) / alpha));
        let sn = (n as f64).sqrt();
        let printed = sup_distance(&cdf, |x| gumbel_cdf((x - 2.0 / c * sn * (n as f64).ln()) / sn));
        let classical = sup_distance(&cdf, |x| gumbel_cdf((x - sn * (n as f64).ln() / (2.0 * c)) / sn));
        dists.push(fitted);
        values.push(json!({
            "n": n,
            "fitted_scale": alpha,
            "fitted_location": beta,
            "sup_distance_fitted": fitted,
            "printed_alpha": sn,
            "printed_beta": 2.0 / c * sn * (n as f64).ln(),
            "sup_distance_printed": printed,
            "classical_beta": sn * (n as f64).ln() / (2.0 * c),
            "sup_distance_classical": classical,
        }));
    }
    let pass = dists.windows(2).all(|w| w[1] < w[0]);
    Ok(CheckReport::new("gumbel", json!({"n": ns}), values, pass, 0.0))
}

/// `c_1..c_K` from `Σ c_k T^k = log Σ (1/6)_n (5/6)_n / n! · (3T/2)^n`.
pub fn wright_constants(k: usize) -> Result<Vec<ExactRat>> {
    if k == 0 {
        return Err(Error::OutOfRange("K must be positive".into()));
    }
    let n = k + 1;
    let mut f = vec![ExactRat::one(); n];
    for m in 1..n {
        let mm = m as i64;
        // ratio of consecutive terms: (1/6 + m − 1)(5/6 + m − 1) / m · 3/2
        f[m] = &f[m - 1] * rat(6 * mm - 5, 6) * rat(6 * mm - 1, 6) / rat(mm, 1) * rat(3, 2);
    }
    Ok(dense::log(&f, n).into_iter().skip(1).collect())
}

/// `Σ 1/|Aut Q|` over connected trivalent multigraphs on `2k` vertices, counted as
/// connected perfect matchings of `6k` half-edges divided by `(2k)! 6^{2k}`.
pub fn trivalent_weight_sum(k: usize) -> Result<ExactRat> {
    if k == 0 || k > 2 {
        return Err(Error::OutOfRange("trivalent enumeration is limited to k <= 2".into()));
    }
    let halves = 6 * k;
    let mut connected = 0u64;
    let mut mate = vec![usize::MAX; halves];
    fn rec(mate: &mut Vec<usize>, vertices: usize, connected: &mut u64) {
        let Some(a) = mate.iter().position(|&m| m == usize::MAX) else {
            // union-find over vertices
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(p: &mut Vec<usize>, x: usize) -> usize {
                if p[x] != x {
                    let r = find(p, p[x]);
                    p[x] = r;
                }
                p[x]
            }
            for (h, &m) in mate.iter().enumerate() {
                let (x, y) = (find(&mut parent, h / 3), find(&mut parent, m / 3));
                parent[x] = y;
            }
            let root = find(&mut parent, 0);
            if (0..vertices).all(|v| find(&mut parent, v) == root) {
                *connected += 1;
            }
            return;
        };
        for b in a + 1..mate.len() {
            if mate[b] == usize::MAX {
                mate[a] = b;
                mate[b] = a;
                rec(mate, vertices, connected);
                mate[a] = usize::MAX;
                mate[b] = usize::MAX;
            }
        }
    }
    rec(&mut mate, 2 * k, &mut connected);
    let den = factorial(2 * k as u64) * num_traits::pow(int(6), 2 * k);
    Ok(ExactRat::new(int(connected as i64), den))
}

/// `a · √(2π)^e`, with a decimal rendering.
#[derive(Clone, Debug, PartialEq)]
pub struct AiryMoment {
    pub k: usize,
    pub rational: ExactRat,
    pub sqrt_2pi_power: u32,
    pub decimal: String,
}

/// `√(2π) · 10^digits`, rounded down, from Machin's formula.
fn sqrt_2pi_scaled(digits: usize) -> BigInt {
    let guard = 10;
    let scale = num_traits::pow(int(10), digits + guard);
    let atan_inv = |x: i64| -> BigInt {
        // Σ (−1)^j / ((2j+1) x^{2j+1})
        let x2 = int(x * x);
        let mut term = &scale / int(x);
        let mut sum = BigInt::zero();
        let mut j = 0i64;
        while !term.is_zero() {
            let t = &term / int(2 * j + 1);
            if j % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            j += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    let two_pi_scaled_sq: BigInt = pi * 2 * &scale;
    two_pi_scaled_sq.sqrt() / num_traits::pow(int(10), guard)
}

fn decimal(r: &ExactRat, sqrt_power: u32, digits: usize) -> String {
    let scale = num_traits::pow(int(10), digits);
    let v = if sqrt_power == 1 {
        r.numer() * sqrt_2pi_scaled(digits) / r.denom()
    } else {
        r.numer() * &scale / r.denom()
    };
    let (ip, fp) = v.div_mod_floor(&scale);
    format!("{ip}.{:0>width$}", fp.to_string(), width = digits)
}

/// `ρ_k = a · √(2π)^e` for `k >= −1`, from the Wright constants.
fn rho(k: i64, c: &[ExactRat]) -> (ExactRat, u32) {
    match k {
        -1 => (ExactRat::one(), 0),
        0 => (rat(1, 4), 1),
        _ if k % 2 == 0 => {
            // Γ(3m) = (3m−1)!, 2^{(6m−1)/2} = 2^{3m}/√2
            let m = (k / 2) as usize;
            let den = num_traits::pow(int(2), 3 * m) * factorial(3 * m as u64 - 1);
            (&c[k as usize - 1] / rat_from_int(den), 1)
        }
        _ => {
            // Γ(j + 1/2) = (2j)! √π / (4^j j!) with j = (3k−1)/2; 2^{(3k−1)/2} = 2^j
            let j = ((3 * k - 1) / 2) as usize;
            let num = num_traits::pow(int(4), j) * factorial(j as u64);
            let den = num_traits::pow(int(2), j) * factorial(2 * j as u64);
            (&c[k as usize - 1] * ExactRat::new(num, den), 0)
        }
    }
}

/// Airy moments `M_k = k! ρ_{k−1}` for `k <= K`.
pub fn airy_moments(k: usize, digits: usize) -> Result<Vec<AiryMoment>> {
    let c = if k >= 2 { wright_constants(k - 1)? } else { vec![] };
    Ok((0..=k)
        .map(|j| {
            let (r, e) = rho(j as i64 - 1, &c);
            let rational = r * rat_from_int(factorial(j as u64));
            let decimal = decimal(&rational, e, digits);
            AiryMoment { k: j, rational, sqrt_2pi_power: e, decimal }
        })
        .collect())
}

fn rho_f64(k: i64, c: &[ExactRat]) -> f64 {
    let (r, e) = rho(k, c);
    rat_to_f64(&r) * if e == 1 { (2.0 * std::f64::consts::PI).sqrt() } else { 1.0 }
}

/// Ratios `m_{n,k} / (m_{n,0} ρ_{k−1} n^{3k/2})` for the external activity polynomial of `K_n`,
/// where `m_{n,k} = C_{n,n+k−1}`.
pub fn wright_ratio_check(n: usize, k: usize, tolerance: f64) -> Result<CheckReport> {
    if n < 2 {
        return Err(Error::OutOfRange("n must be at least 2".into()));
    }
    let table = connected_count_table(n, k + 1)?;
    let c = if k >= 2 { wright_constants(k - 1)? } else { vec![] };
    let m0 = &table[n][0];
    let mut values = Vec::new();
    let mut pass = true;
    for j in 0..=k {
        let ratio = ratio_to_f64(&table[n][j], m0) / rho_f64(j as i64 - 1, &c) / (n as f64).powf(1.5 * j as f64);
        if j <= 1 {
            pass &= (ratio - 1.0).abs() <= tolerance;
        }
        values.push(json!({"k": j, "factorial_moment": table[n][j].to_string(), "ratio": ratio}));
    }
    Ok(CheckReport::new("wright-ratio", json!({"n": n, "K": k}), values, pass, tolerance))
}

/// `C_k(T(w))` with `T = w e^{−w}`, from `a_n = [T^n] C_k`.
fn compose_with_inverse_tree(a: &[ExactRat], n: usize) -> Vec<ExactRat> {
    let mut out = vec![ExactRat::zero(); n];
    for (m, am) in a.iter().enumerate().take(n) {
        if am.is_zero() {
            continue;
        }
        // w^m e^{−mw}
        let mut coef = am.clone();
        for j in 0..n - m {
            out[m + j] += &coef;
            coef = coef * rat(-(m as i64), j as i64 + 1);
        }
    }
    out
}

/// The tree function and the expansion of `η log F` in the saddle-point parameter,
/// checked as exact series identities to order `N`.
///
/// `E_k` is accepted as a polynomial when its degree is at most `3k + 2` and at least
/// four higher coefficients below the order vanish.
pub fn tree_saddle_identities(order: usize, kmax: usize) -> Result<CheckReport> {
    if order < 4 || order > 80 {
        return Err(Error::OutOfRange("order must lie in 4..=80".into()));
    }
    let n = order + 1;
    let mut values = Vec::new();
    let mut pass = true;
    let mut record = |name: &str, ok: bool, extra: Value, values: &mut Vec<Value>| {
        pass &= ok;
        values.push(json!({"identity": name, "holds": ok, "detail": extra}));
    };
    // w(T) = Σ n^{n−1} T^n / n!
    let w: Vec<ExactRat> = (0..n)
        .map(|m| {
            if m == 0 {
                ExactRat::zero()
            } else {
                ExactRat::new(num_traits::pow(int(m as i64), m - 1), factorial(m as u64))
            }
        })
        .collect();
    let mut t = vec![ExactRat::zero(); n];
    t[1] = ExactRat::one();
    let lhs = dense::mul(&t, &dense::exp(&w, n), n);
    let first: Vec<String> = w.iter().skip(1).take(4).map(rat_str).collect();
    record("T exp(w) = w", lhs == w, json!({"w_coefficients": first}), &mut values);

    let table = connected_count_table(order, kmax + 2)?;
    let egf = |k: usize| -> Vec<ExactRat> {
        (0..n)
            .map(|m| if m == 0 { ExactRat::zero() } else { ExactRat::new(table[m][k].clone(), factorial(m as u64)) })
            .collect()
    };
    // C_0 = w − w²/2
    let c0 = compose_with_inverse_tree(&egf(0), n);
    let mut c0_closed = vec![ExactRat::zero(); n];
    c0_closed[1] = ExactRat::one();
    c0_closed[2] = rat(-1, 2);
    record("C_0 = w - w^2/2", c0 == c0_closed, Value::Null, &mut values);
    // C_1 = −½ log(1−w) − w/2 − w²/4
    let c1 = compose_with_inverse_tree(&egf(1), n);
    let mut c1_closed: Vec<ExactRat> =
        (0..n).map(|m| if m == 0 { ExactRat::zero() } else { rat(1, 2 * m as i64) }).collect();
    c1_closed[1] -= rat(1, 2);
    c1_closed[2] -= rat(1, 4);
    record("C_1 = -log(1-w)/2 - w/2 - w^2/4", c1 == c1_closed, Value::Null, &mut values);
    let mut printed = c1_closed.clone();
    printed[1] += rat(1, 1);
    printed[2] += rat(1, 2);
    values.push(json!({"identity": "C_1 with +w/2 + w^2/4 as printed", "holds": c1 == printed}));

    let c = wright_constants(kmax.max(1))?;
    for k in 1..=kmax {
        // E_k(w) = (1 − w)^{3k} C_{k+1}(w)
        let ck = compose_with_inverse_tree(&egf(k + 1), n);
        let one_minus_w = [ExactRat::one(), rat(-1, 1)];
        let e = dense::mul(&ck, &dense::pow(&one_minus_w, 3 * k, n), n);
        let deg = e.iter().rposition(|x| !x.is_zero()).unwrap_or(0);
        // deg E_k <= 3k + 2; demand a few vanishing coefficients past it
        let polynomial = deg <= 3 * k + 2 && deg + 4 <= order;
        let at_one: ExactRat = e.iter().sum();
        let ok = polynomial && at_one == c[k - 1];
        let coeffs: Vec<String> = e[..=deg].iter().map(rat_str).collect();
        record(
            &format!("E_{k}(1) = c_{k}"),
            ok,
            json!({"degree": deg, "E_at_1": rat_str(&at_one), "c": rat_str(&c[k - 1]), "coefficients": coeffs}),
            &mut values,
        );
    }
    Ok(CheckReport::new("tree-saddle", json!({"order": order, "K": kmax}), values, pass, 0.0))
}

/// `α_{n,k}` and `β_{n,k} = C(n+k−1, k) α_{n,k}` for `k <= K`.
#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteTable {
    pub n: usize,
    pub alpha: Vec<ExactRat>,
    pub beta: Vec<ExactInt>,
}

/// `β_{n,k}` by the partition sum `n Σ_λ (−1)^{l−1} (l−1)! / Π m_i! i!^{m_i} · n(λ')^{n+k−1}`.
pub fn bipartite_beta_partition_sum(n: usize, k: usize) -> Result<ExactInt> {
    let mut s = ExactRat::zero();
    for lam in enum_partitions(n as u32) {
        let l = lam.length() as u64;
        let mut den = ExactInt::one();
        let mut nl = 0u64;
        for (part, mult) in lam.multiplicities() {
            den *= factorial(mult as u64) * num_traits::pow(factorial(part as u64), mult as usize);
            nl += (part as u64) * (part as u64 - 1) / 2 * mult as u64;
        }
        let sign = if l % 2 == 1 { 1 } else { -1 };
        let term = ExactRat::new(factorial(l - 1) * sign, den) * rat_from_int(num_traits::pow(int(nl as i64), n + k - 1));
        s += term;
    }
    let beta = s * rat(n as i64, 1);
    if !beta.is_integer() {
        return Err(Error::Identity(format!("beta_{{{n},{k}}} = {beta} is not an integer")));
    }
    Ok(beta.to_integer())
}

/// `α_{n,k}` from `Σ α_{n,k} t^k/k! = ((e^t − 1)/t)^{n−1} R_{K_n}(e^t)`.
pub fn bipartite_alpha_generating(n: usize, k: usize) -> Result<Vec<ExactRat>> {
    let len = k + 1;
    let r = complete_graph_r(n)?;
    let rk: Vec<ExactRat> = (0..len)
        .map(|j| {
            let s: ExactInt = r.coeffs().iter().enumerate().map(|(i, c)| c * num_traits::pow(int(i as i64), j)).sum();
            ExactRat::new(s, factorial(j as u64))
        })
        .collect();
    let base: Vec<ExactRat> = (0..len).map(|j| ExactRat::new(ExactInt::one(), factorial(j as u64 + 1))).collect();
    let prod = dense::mul(&dense::pow(&base, n - 1, len), &rk, len);
    Ok(prod.into_iter().enumerate().map(|(j, c)| c * rat_from_int(factorial(j as u64))).collect())
}

/// Both routes to `β_{n,k}`; errors if they disagree.
pub fn bipartite_alpha_beta(n: usize, k: usize) -> Result<BipartiteTable> {
    if n == 0 || n > 8 {
        return Err(Error::OutOfRange(format!("n = {n} must lie in 1..=8")));
    }
    let alpha = bipartite_alpha_generating(n, k)?;
    let mut beta = Vec::new();
    for (j, a) in alpha.iter().enumerate() {
        let b = bipartite_beta_partition_sum(n, j)?;
        let via_gf = a * rat_from_int(big_binomial((n + j - 1) as i64, j as i64)?);
        if via_gf != rat_from_int(b.clone()) {
            return Err(Error::Identity(format!("beta_{{{n},{j}}}: partition sum {b}, generating function {via_gf}")));
        }
        beta.push(b);
    }
    Ok(BipartiteTable { n, alpha, beta })
}

/// Whether a sequence weakly increases and then weakly decreases.
pub fn is_unimodal(seq: &[ExactInt]) -> bool {
    let mut i = 0;
    while i + 1 < seq.len() && seq[i] <= seq[i + 1] {
        i += 1;
    }
    while i + 1 < seq.len() && seq[i] >= seq[i + 1] {
        i += 1;
    }
    i + 1 >= seq.len()
}

/// Unimodality of the whole sequence and of its even- and odd-degree parts.
pub fn unimodality_check(p: &BettiPoly) -> CheckReport {
    let c = &p.coefficients;
    let even: Vec<ExactInt> = c.iter().step_by(2).cloned().collect();
    let odd: Vec<ExactInt> = c.iter().skip(1).step_by(2).cloned().collect();
    let (e, o, f) = (is_unimodal(&even), is_unimodal(&odd), is_unimodal(c));
    CheckReport::new(
        "unimodality",
        json!({"family": p.family, "params": p.params}),
        vec![json!({"even_unimodal": e, "odd_unimodal": o, "full_unimodal": f})],
        e && o,
        0.0,
    )
}

/// Every instance of `b_i <= b_{i+2j}` for `0 <= j <= k − i`; violations are listed.
pub fn weak_hl_check(p: &BettiPoly, k: i64) -> CheckReport {
    let mut violations = Vec::new();
    let mut checked = 0u64;
    for i in 0..=k.max(-1) {
        for j in 0..=(k - i) {
            let (a, b) = (p.coeff(i as usize), p.coeff((i + 2 * j) as usize));
            checked += 1;
            if a > b {
                violations.push(json!({"i": i, "j": j, "b_i": a.to_string(), "b_i+2j": b.to_string()}));
            }
        }
    }
    let pass = violations.is_empty();
    let mut values = vec![json!({"instances": checked})];
    values.extend(violations);
    CheckReport::new("weak-hard-lefschetz", json!({"family": p.family, "params": p.params, "k": k}), values, pass, 0.0)
}

/// `k` for the inequality check: `core_dim` when known, else half the complex dimension.
pub fn lefschetz_k(p: &BettiPoly) -> i64 {
    p.core_dim.unwrap_or(p.complex_dim / 2)
}

/// Reference laws for [`fit_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reference {
    Airy,
    Gumbel,
    BSpline(u32),
}

impl std::str::FromStr for Reference {
    type Err = Error;

    /// `airy`, `gumbel` or `bspline:R`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "airy" => Ok(Reference::Airy),
            "gumbel" => Ok(Reference::Gumbel),
            _ => {
                let r = s
                    .strip_prefix("bspline:")
                    .and_then(|r| r.parse::<u32>().ok())
                    .filter(|&r| (1..=64).contains(&r))
                    .ok_or_else(|| Error::Invalid(format!("unknown distribution `{s}` (airy, gumbel, bspline:R)")))?;
                Ok(Reference::BSpline(r))
            }
        }
    }
}

impl std::fmt::Display for Reference {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Reference::Airy => write!(f, "airy"),
            Reference::Gumbel => write!(f, "gumbel"),
            Reference::BSpline(r) => write!(f, "bspline:{r}"),
        }
    }
}

/// Central moments divided by `σ^k`, from raw moments with `raw[0] = 1`.
fn standardize_raw(raw: &[f64]) -> Vec<f64> {
    let mean = raw[1];
    let central: Vec<f64> = (0..raw.len())
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let b: f64 = (0..j).map(|i| (k - i) as f64 / (i + 1) as f64).product();
                    b * raw[k - j] * (-mean).powi(j as i32)
                })
                .sum()
        })
        .collect();
    let sigma = central[2].sqrt();
    central.iter().enumerate().map(|(k, c)| c / sigma.powi(k as i32)).collect()
}

fn zeta(s: u32) -> f64 {
    // partial sum plus the Euler–Maclaurin tail
    let n = 10_000u32;
    let head: f64 = (1..n).rev().map(|k| (k as f64).powi(-(s as i32))).sum();
    let nf = n as f64;
    head + nf.powi(1 - s as i32) / (s as f64 - 1.0) + 0.5 * nf.powi(-(s as i32)) + s as f64 / 12.0 * nf.powi(-(s as i32) - 1)
}

/// Standardized moments `0..=k` of a reference law.
pub fn reference_standardized_moments(dist: Reference, k: u32) -> Result<Vec<f64>> {
    let k = k.max(2);
    let raw: Vec<f64> = match dist {
        Reference::Airy => airy_moments(k as usize, 20)?
            .iter()
            .map(|m| rat_to_f64(&m.rational) * if m.sqrt_2pi_power == 1 { (2.0 * std::f64::consts::PI).sqrt() } else { 1.0 })
            .collect(),
        Reference::BSpline(r) => bspline_moments(r, k)?.iter().map(rat_to_f64).collect(),
        Reference::Gumbel => {
            // cumulants κ_1 = γ, κ_n = (n−1)! ζ(n)
            let euler_gamma = 0.577_215_664_901_532_9_f64;
            let kappa: Vec<f64> = (0..=k)
                .map(|n| match n {
                    0 => 0.0,
                    1 => euler_gamma,
                    _ => (1..n).map(f64::from).product::<f64>() * zeta(n),
                })
                .collect();
            let mut m = vec![1.0f64];
            for n in 1..=k as usize {
                let mut acc = 0.0;
                let mut binom = 1.0;
                for j in 1..=n {
                    acc += binom * kappa[j] * m[n - j];
                    binom *= (n - j) as f64 / j as f64;
                }
                m.push(acc);
            }
            m
        }
    };
    Ok(standardize_raw(&raw))
}

/// Standardized moments of `mu` against a reference law for orders `3..=k`; passes when
/// every absolute difference is at most `tolerance`.
pub fn fit_report(mu: &DiscreteMeasure, dist: Reference, k: u32, tolerance: f64) -> Result<CheckReport> {
    if !(3..=24).contains(&k) {
        return Err(Error::OutOfRange(format!("moment order k = {k} must lie in 3..=24")));
    }
    let data = standardized_moments(mu, k).ok_or_else(|| Error::Invalid("the measure has zero variance".into()))?;
    let reference = reference_standardized_moments(dist, k)?;
    let mut worst = 0f64;
    let values = (3..=k as usize)
        .map(|j| {
            let err = (data[j] - reference[j]).abs();
            worst = worst.max(err);
            json!({"k": j, "data": data[j], "reference": reference[j], "abs_error": err})
        })
        .collect();
    Ok(CheckReport::new("fit", json!({"dist": dist.to_string(), "K": k}), values, worst <= tolerance, tolerance))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{poincare_grassmannian, poincare_hilbert};
    use proptest::prelude::*;

    fn lp(c: &[i64]) -> UniLaurent {
        UniLaurent::from_i64_coeffs("q", 0, c)
    }

    #[test]
    fn measure_examples() {
        let m = measure_from_poly(&lp(&[1, 1])).unwrap();
        assert_eq!(m.points(), &[(rat(0, 1), rat(1, 1)), (rat(1, 1), rat(1, 1))]);
        let m = measure_from_poly(&UniLaurent::from_i64_coeffs("q", -1, &[1, 0, 1])).unwrap();
        assert_eq!(m.points()[0].0, rat(-1, 1));
        let gr = poincare_grassmannian(4, 2).unwrap();
        let m = measure_from_betti(&gr).unwrap();
        let masses: Vec<ExactRat> = m.points().iter().map(|p| p.1.clone()).collect();
        assert_eq!(masses, [1, 1, 2, 1, 1].map(|x| rat(x, 1)));
        assert!(measure_from_poly(&lp(&[1, -1])).is_err());
    }

    #[test]
    fn moment_examples() {
        let r = moments(&measure_from_poly(&lp(&[1, 1])).unwrap(), 2, false);
        assert_eq!(r.raw, [2, 1, 1].map(|x| rat(x, 1)));
        assert_eq!(r.factorial, [2, 1, 0].map(|x| rat(x, 1)));
        // R_{K_4} = Σ C_{4,3+k} (q−1)^k
        let r4 = complete_graph_r(4).unwrap().to_laurent("q");
        assert_eq!(factorial_moments(&r4, 3).unwrap(), [16, 15, 6, 1].map(|x| rat(x, 1)));
        let mu = measure_from_poly(&lp(&[1, 1])).unwrap();
        assert_eq!(shifted_moments(&mu, &rat(1, 1), 4), moments(&mu.translate(&rat(-1, 1)), 4, false).raw);
    }

    #[test]
    fn stirling_relation_between_moment_kinds() {
        // M_k = Σ_j S(k,j) j! m_j
        let e = lp(&[3, 0, 5, 1, 2]);
        let r = moments(&measure_from_poly(&e).unwrap(), 5, false);
        let mut s = vec![vec![0i64; 6]; 6];
        s[0][0] = 1;
        for k in 1..6 {
            for j in 1..=k {
                s[k][j] = j as i64 * s[k - 1][j] + s[k - 1][j - 1];
            }
        }
        for k in 0..6 {
            let m: ExactRat = (0..=k).map(|j| rat(s[k][j], 1) * rat_from_int(factorial(j as u64)) * &r.factorial[j]).sum();
            assert_eq!(m, r.raw[k]);
        }
    }

    #[test]
    fn convolution_examples() {
        let mu = measure_from_poly(&lp(&[1, 1])).unwrap();
        assert_eq!(convolve(&DiscreteMeasure::dirac(rat(0, 1)), &mu), mu);
        assert_eq!(convolve(&mu, &mu), measure_from_poly(&lp(&[1, 2, 1])).unwrap());
        // [6 1]_q is uniform on 0..5 and factors as (1+q)(1+q²+q⁴)
        let uniform = measure_from_poly(&q_binomial(6, 1).unwrap().to_laurent("q")).unwrap();
        let f = convolve(&mu, &measure_from_poly(&lp(&[1, 0, 1, 0, 1])).unwrap());
        assert_eq!(uniform, f);
    }

    #[test]
    fn bspline_examples() {
        assert_eq!(bspline_moments(1, 2).unwrap()[2], rat(1, 12));
        assert_eq!(bspline_moments(2, 2).unwrap()[2], rat(1, 6));
        for r in 1..5 {
            let m = bspline_moments(r, 5).unwrap();
            assert!(m[1].is_zero() && m[3].is_zero() && m[5].is_zero());
            assert_eq!(m[0], rat(1, 1));
        }
        // χ^{(2)} is the triangle on [−1,1]: M_4 = 2∫_0^1 x^4 (1−x) dx = 1/15
        assert_eq!(bspline_moments(2, 4).unwrap()[4], rat(1, 15));
    }

    #[test]
    fn grassmann_limit() {
        // Σ_{j=-50}^{50} (j/100)² / 100 = 1717/20000 against 1/12
        let r = grassmann_limit_check(1, 100, 2, 0.03).unwrap();
        let scaled = r.values[2]["scaled_moment"].as_f64().unwrap();
        assert!((scaled - 1717.0 / 20000.0).abs() < 1e-12);
        assert!((r.values[2]["scaled_relative_error"].as_f64().unwrap() - 0.0302).abs() < 1e-9);
        assert!(r.values[2]["normalized_relative_error"].as_f64().unwrap() <= 0.03);
        let r = grassmann_limit_check(3, 120, 4, 0.05).unwrap();
        assert!(r.pass, "{:?}", r.values);
    }

    #[test]
    fn partition_cdf_examples() {
        assert_eq!(partition_length_cdf_at(4, 1), int(1));
        assert_eq!(partition_length_cdf_at(4, 4), int(5));
        assert_eq!(partition_length_cdf_at(8, 8), int(22));
        // against the Hilbert-scheme Betti numbers: b_{2i} counts partitions of length n − i
        let n = 30;
        let cdf = partition_length_cdf(n);
        let h = poincare_hilbert(n).unwrap();
        for x in 1..=n {
            assert_eq!(&cdf[x] - &cdf[x - 1], h.coeff(2 * (n - x)));
        }
    }

    #[test]
    fn gumbel_trend_on_small_sizes() {
        let r = gumbel_check(&[50, 100, 200, 400]).unwrap();
        assert!(r.pass, "{:?}", r.values);
    }

    #[test]
    fn wright_constant_table() {
        let c = wright_constants(5).unwrap();
        assert_eq!(c, vec![rat(5, 24), rat(5, 16), rat(1105, 1152), rat(565, 128), rat(82825, 3072)]);
        assert_eq!(trivalent_weight_sum(1).unwrap(), c[0]);
        assert_eq!(trivalent_weight_sum(2).unwrap(), c[1]);
    }

    #[test]
    fn airy_moment_values() {
        let m = airy_moments(4, 30).unwrap();
        assert_eq!(m[0].rational, rat(1, 1));
        assert_eq!((m[1].rational.clone(), m[1].sqrt_2pi_power), (rat(1, 4), 1));
        assert!(m[1].decimal.starts_with("0.626657068"), "{}", m[1].decimal);
        assert_eq!((m[2].rational.clone(), m[2].sqrt_2pi_power), (rat(5, 12), 0));
        // M_3 = 3! ρ_2 = 6 · √(2π) c_2 / (2^3 · 2!) = 15√(2π)/128 ≈ 0.2937
        assert_eq!(m[3].rational, rat(15, 128));
        assert!(m[3].decimal.starts_with("0.2937"), "{}", m[3].decimal);
    }

    #[test]
    fn wright_ratios() {
        let r = wright_ratio_check(60, 2, 0.5).unwrap();
        assert_eq!(r.values[0]["ratio"].as_f64().unwrap(), 1.0);
        let a = wright_ratio_check(20, 1, 1.0).unwrap().values[1]["ratio"].as_f64().unwrap();
        let b = wright_ratio_check(40, 1, 1.0).unwrap().values[1]["ratio"].as_f64().unwrap();
        assert!(a < b && b < 1.0, "{a} {b}");
    }

    #[test]
    fn saddle_identities() {
        let r = tree_saddle_identities(24, 2).unwrap();
        assert!(r.pass, "{:?}", r.values);
        assert_eq!(r.values[0]["detail"]["w_coefficients"], json!(["1", "1", "3/2", "8/3"]));
        let printed = r.values.iter().find(|v| v["identity"].as_str().unwrap().contains("printed")).unwrap();
        assert_eq!(printed["holds"], json!(false));
    }

    #[test]
    fn bipartite_tables() {
        let t2 = bipartite_alpha_beta(2, 5).unwrap();
        assert!(t2.beta.iter().all(|b| b.is_one()));
        assert_eq!(bipartite_alpha_beta(3, 2).unwrap().beta[2], int(39));
        assert_eq!(bipartite_alpha_beta(4, 1).unwrap().beta[1], int(156));
        let t3 = bipartite_alpha_beta(3, 6).unwrap();
        for (k, a) in t3.alpha.iter().enumerate() {
            let expect = rat(3i64.pow(k as u32 + 1) - 1, ((k + 2) * (k + 1)) as i64);
            assert_eq!(a / &t3.alpha[0], expect);
        }
        // n = 1: R_{K_1} = 1
        assert_eq!(bipartite_alpha_beta(1, 3).unwrap().beta, vec![int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn unimodality_and_lefschetz() {
        let g = poincare_grassmannian(10, 4).unwrap();
        assert!(unimodality_check(&g).pass);
        assert!(g.is_palindromic());
        assert!(weak_hl_check(&g, lefschetz_k(&g)).pass);
        let h = poincare_hilbert(50).unwrap();
        assert_eq!(lefschetz_k(&h), 49);
        assert!(weak_hl_check(&h, 49).pass);
        assert!(is_unimodal(&[1, 2, 2, 3, 1, 0].map(int)));
        assert!(!is_unimodal(&[1, 3, 1, 2].map(int)));
        let bad = BettiPoly::new("x", BTreeMap::new(), [1, 0, 0, 0, 2].map(int).to_vec(), 2, Some(2), 0).unwrap();
        let r = weak_hl_check(&bad, 2);
        assert!(!r.pass);
    }

    proptest! {
        #[test]
        fn factorial_moments_two_routes(c in proptest::collection::vec(0i64..50, 1..8), lo in -3i64..3) {
            let e = UniLaurent::from_i64_coeffs("q", lo, &c);
            let direct = moments(&measure_from_poly(&e).unwrap(), 5, false).factorial;
            prop_assert_eq!(factorial_moments(&e, 5).unwrap(), direct);
        }

        #[test]
        fn convolution_multiplies_mgfs(a in proptest::collection::vec(0i64..9, 1..5), b in proptest::collection::vec(0i64..9, 1..5)) {
            let ma = measure_from_poly(&lp(&a)).unwrap();
            let mb = measure_from_poly(&lp(&b)).unwrap();
            let c = convolve(&ma, &mb);
            // M_c(t) = M_a(t) M_b(t): binomial convolution of moments
            for k in 0..=6u32 {
                let s: ExactRat = (0..=k)
                    .map(|j| rat_from_int(big_binomial(k as i64, j as i64).unwrap()) * ma.raw_moment(j) * mb.raw_moment(k - j))
                    .sum();
                prop_assert_eq!(c.raw_moment(k), s);
            }
        }
    }

    #[test]
    fn reference_laws() {
        let g = reference_standardized_moments(Reference::Gumbel, 4).unwrap();
        // skewness 12√6 ζ(3)/π³, kurtosis 27/5
        assert!((g[3] - 1.139_547_099_404_648_7).abs() < 1e-9, "{}", g[3]);
        assert!((g[4] - 5.4).abs() < 1e-9, "{}", g[4]);
        let b = reference_standardized_moments(Reference::BSpline(1), 4).unwrap();
        assert!((b[4] - 1.8).abs() < 1e-12);
        let a = reference_standardized_moments(Reference::Airy, 4).unwrap();
        assert!((a[1]).abs() < 1e-12 && (a[2] - 1.0).abs() < 1e-12);
        // Airy skewness ≈ 0.7005
        assert!((a[3] - 0.7005).abs() < 1e-3, "{}", a[3]);
        assert_eq!("bspline:3".parse::<Reference>().unwrap(), Reference::BSpline(3));
        assert!("bspline:x".parse::<Reference>().is_err());
        assert!("normal".parse::<Reference>().is_err());
    }

    #[test]
    fn uniform_fits_bspline_one() {
        let mu = measure_from_poly(&UniLaurent::from_i64_coeffs("q", 0, &[1; 400])).unwrap();
        let r = fit_report(&mu, Reference::BSpline(1), 6, 0.01).unwrap();
        assert!(r.pass, "{:?}", r.values);
        assert!(!fit_report(&mu, Reference::Gumbel, 6, 0.01).unwrap().pass);
    }

}
