//! Truncated multivariate power series over an exact coefficient domain.

mod ratfun_series;

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::arith::scalar::{moebius, ExactRat};
use crate::arith::{UniLaurent, UniRatFun};
use crate::error::{Error, Result};

pub use ratfun_series::RatFunSeries;

/// A coefficient ring usable inside [`TruncSeries`].
///
/// `Domain` carries whatever is needed to build constants (variable names,
/// inner truncation orders); two coefficients combine only if their domains agree.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    type Domain: Clone + PartialEq + Debug + Send + Sync;

    fn zero(d: &Self::Domain) -> Self;
    fn one(d: &Self::Domain) -> Self;
    fn domain(&self) -> Self::Domain;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn scale(&self, r: &ExactRat) -> Self;
    /// Multiplicative inverse, if this element is a unit.
    fn inverse(&self) -> Option<Self>;
    /// Substitutes every inner variable `x -> x^k`.
    fn adams(&self, k: u32) -> Self;

    fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.domain())
    }
}

impl Coeff for ExactRat {
    type Domain = ();

    fn zero(_: &()) -> Self {
        <ExactRat as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <ExactRat as One>::one()
    }
    fn domain(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(self + o)
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self * o)
    }
    fn scale(&self, r: &ExactRat) -> Self {
        self * r
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn adams(&self, _: u32) -> Self {
        self.clone()
    }
}

impl Coeff for UniLaurent {
    type Domain = String;

    fn zero(d: &String) -> Self {
        UniLaurent::zero(d)
    }
    fn one(d: &String) -> Self {
        UniLaurent::one(d)
    }
    fn domain(&self) -> String {
        self.var().to_string()
    }
    fn is_zero(&self) -> bool {
        UniLaurent::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        self.checked_add(o)
    }
    fn neg(&self) -> Self {
        UniLaurent::neg(self)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        self.checked_mul(o)
    }
    fn scale(&self, r: &ExactRat) -> Self {
        UniLaurent::scale(self, r)
    }
    /// Only monomials are units among Laurent polynomials.
    fn inverse(&self) -> Option<Self> {
        if self.num_terms() != 1 {
            return None;
        }
        let (&e, c) = self.terms().iter().next().unwrap();
        Some(UniLaurent::monomial(self.var(), -e, c.recip()))
    }
    fn adams(&self, k: u32) -> Self {
        UniLaurent::adams(self, k as i64)
    }
}

impl Coeff for UniRatFun {
    type Domain = String;

    fn zero(d: &String) -> Self {
        UniRatFun::zero(d)
    }
    fn one(d: &String) -> Self {
        UniRatFun::one(d)
    }
    fn domain(&self) -> String {
        self.var().to_string()
    }
    fn is_zero(&self) -> bool {
        UniRatFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Result<Self> {
        self.checked_add(o)
    }
    fn neg(&self) -> Self {
        UniRatFun::neg(self)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        self.checked_mul(o)
    }
    fn scale(&self, r: &ExactRat) -> Self {
        UniRatFun::scale(self, r)
    }
    fn inverse(&self) -> Option<Self> {
        UniRatFun::inverse(self)
    }
    fn adams(&self, k: u32) -> Self {
        UniRatFun::adams(self, k)
    }
}

/// Degree cap of a [`TruncSeries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// Keep monomials of total degree at most the bound.
    Total(u32),
    /// Keep monomials with `u_i <= caps[i]` for every variable.
    Box(Vec<u32>),
}

impl Truncation {
    pub fn contains(&self, u: &[u32]) -> bool {
        match self {
            Truncation::Total(d) => u.iter().sum::<u32>() <= *d,
            Truncation::Box(caps) => u.iter().zip(caps).all(|(a, b)| a <= b),
        }
    }

    /// Largest total degree that survives truncation.
    pub fn max_total_degree(&self) -> u32 {
        match self {
            Truncation::Total(d) => *d,
            Truncation::Box(caps) => caps.iter().sum(),
        }
    }

    fn meet(&self, o: &Self) -> Result<Self> {
        match (self, o) {
            (Truncation::Total(a), Truncation::Total(b)) => Ok(Truncation::Total(*a.min(b))),
            (Truncation::Box(a), Truncation::Box(b)) if a.len() == b.len() => {
                Ok(Truncation::Box(a.iter().zip(b).map(|(x, y)| *x.min(y)).collect()))
            }
            _ => Err(Error::DomainMismatch),
        }
    }

    /// All exponent vectors within the bound, in lexicographic order.
    fn exponents(&self, r: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; r];
        self.enumerate(0, &mut cur, &mut out);
        out
    }

    fn enumerate(&self, i: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let cap = match self {
            Truncation::Total(d) => d - cur[..i].iter().sum::<u32>(),
            Truncation::Box(caps) => caps[i],
        };
        for e in 0..=cap {
            cur[i] = e;
            self.enumerate(i + 1, cur, out);
        }
        cur[i] = 0;
    }
}

/// Truncated power series in auxiliary variables `T_1..T_r` with coefficients in `C`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<C: Coeff> {
    vars: Vec<String>,
    trunc: Truncation,
    domain: C::Domain,
    terms: BTreeMap<Vec<u32>, C>,
}

fn total(u: &[u32]) -> u32 {
    u.iter().sum()
}

fn le(c: &[u32], u: &[u32]) -> bool {
    c.iter().zip(u).all(|(a, b)| a <= b)
}

fn minus(u: &[u32], c: &[u32]) -> Vec<u32> {
    u.iter().zip(c).map(|(a, b)| a - b).collect()
}

impl<C: Coeff> TruncSeries<C> {
    pub fn zero(vars: &[&str], trunc: Truncation, domain: C::Domain) -> Self {
        if let Truncation::Box(caps) = &trunc {
            assert_eq!(caps.len(), vars.len(), "one cap per variable");
        }
        TruncSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            trunc,
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[&str], trunc: Truncation, c: C) -> Self {
        let mut s = Self::zero(vars, trunc, c.domain());
        s.insert(vec![0; vars.len()], c);
        s
    }

    pub fn one(vars: &[&str], trunc: Truncation, domain: C::Domain) -> Self {
        let c = C::one(&domain);
        Self::constant(vars, trunc, c)
    }

    /// Builds a series from `(exponent, coefficient)` pairs; out-of-bound terms are dropped.
    pub fn from_terms(
        vars: &[&str],
        trunc: Truncation,
        domain: C::Domain,
        terms: impl IntoIterator<Item = (Vec<u32>, C)>,
    ) -> Result<Self> {
        let mut s = Self::zero(vars, trunc, domain);
        for (u, c) in terms {
            if u.len() != s.vars.len() {
                return Err(Error::Invalid("exponent arity".into()));
            }
            if c.domain() != s.domain {
                return Err(Error::DomainMismatch);
            }
            s.accumulate(u, c)?;
        }
        Ok(s)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn truncation(&self) -> &Truncation {
        &self.trunc
    }

    pub fn domain(&self) -> &C::Domain {
        &self.domain
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, C> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &[u32]) -> C {
        self.terms.get(u).cloned().unwrap_or_else(|| C::zero(&self.domain))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&vec![0; self.vars.len()])
    }

    fn insert(&mut self, u: Vec<u32>, c: C) {
        if !c.is_zero() && self.trunc.contains(&u) {
            self.terms.insert(u, c);
        }
    }

    fn accumulate(&mut self, u: Vec<u32>, c: C) -> Result<()> {
        if c.is_zero() || !self.trunc.contains(&u) {
            return Ok(());
        }
        match self.terms.get_mut(&u) {
            Some(old) => {
                let s = old.add(&c)?;
                if s.is_zero() {
                    self.terms.remove(&u);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(u, c);
            }
        }
        Ok(())
    }

    fn compatible(&self, o: &Self) -> Result<Truncation> {
        if self.vars != o.vars || self.domain != o.domain {
            return Err(Error::DomainMismatch);
        }
        self.trunc.meet(&o.trunc)
    }

    fn empty_like(&self, trunc: Truncation) -> Self {
        TruncSeries { vars: self.vars.clone(), trunc, domain: self.domain.clone(), terms: BTreeMap::new() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let t = self.compatible(o)?;
        let mut out = self.empty_like(t);
        for (u, c) in self.terms.iter().chain(o.terms.iter()) {
            out.accumulate(u.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.empty_like(self.trunc.clone());
        out.terms = self.terms.iter().map(|(u, c)| (u.clone(), c.neg())).collect();
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        let t = self.compatible(o)?;
        let mut out = self.empty_like(t);
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let w: Vec<u32> = u.iter().zip(v).map(|(x, y)| x + y).collect();
                if out.trunc.contains(&w) {
                    out.accumulate(w, a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, r: &ExactRat) -> Self {
        let mut out = self.empty_like(self.trunc.clone());
        for (u, c) in &self.terms {
            out.insert(u.clone(), c.scale(r));
        }
        out
    }

    pub fn scale_by(&self, k: &C) -> Result<Self> {
        let mut out = self.empty_like(self.trunc.clone());
        for (u, c) in &self.terms {
            out.insert(u.clone(), c.mul(k)?);
        }
        Ok(out)
    }

    /// Multiplicative inverse up to truncation.
    pub fn inv(&self) -> Result<Self> {
        let a0_inv = self.constant_term().inverse().ok_or(Error::NotUnit)?;
        let r = self.vars.len();
        let mut out = self.empty_like(self.trunc.clone());
        let nonconst: Vec<(&Vec<u32>, &C)> = self.terms.iter().filter(|(u, _)| total(u) > 0).collect();
        for u in self.trunc.exponents(r) {
            if total(&u) == 0 {
                out.insert(u, a0_inv.clone());
                continue;
            }
            let mut s = C::zero(&self.domain);
            for &(c, a) in &nonconst {
                if le(c, &u) {
                    if let Some(b) = out.terms.get(&minus(&u, c)) {
                        s = s.add(&a.mul(b)?)?;
                    }
                }
            }
            out.insert(u, s.mul(&a0_inv)?.neg());
        }
        Ok(out)
    }

    /// Formal logarithm; requires constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm("log requires constant term 1".into()));
        }
        let r = self.vars.len();
        let mut out = self.empty_like(self.trunc.clone());
        let nonconst: Vec<(&Vec<u32>, &C)> = self.terms.iter().filter(|(u, _)| total(u) > 0).collect();
        for u in self.trunc.exponents(r) {
            let n = total(&u);
            if n == 0 {
                continue;
            }
            // n b_u = n a_u - Σ_{d ≠ 0, d ≠ u} |u-d| b_{u-d} a_d
            let mut s = self.coeff(&u).scale(&ExactRat::from_integer(n.into()));
            for &(d, a) in &nonconst {
                if d != &u && le(d, &u) {
                    let c = minus(&u, d);
                    if let Some(b) = out.terms.get(&c) {
                        let w = ExactRat::from_integer(total(&c).into());
                        s = s.sub(&b.mul(a)?.scale(&w))?;
                    }
                }
            }
            out.insert(u, s.scale(&ExactRat::new(1.into(), n.into())));
        }
        Ok(out)
    }

    /// Formal exponential; requires constant term 0.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm("exp requires constant term 0".into()));
        }
        let r = self.vars.len();
        let mut out = self.empty_like(self.trunc.clone());
        for u in self.trunc.exponents(r) {
            let n = total(&u);
            if n == 0 {
                out.insert(u, C::one(&self.domain));
                continue;
            }
            // n E_u = Σ_{c ≠ 0} |c| f_c E_{u-c}
            let mut s = C::zero(&self.domain);
            for (c, f) in &self.terms {
                if le(c, &u) {
                    if let Some(e) = out.terms.get(&minus(&u, c)) {
                        let w = ExactRat::from_integer(total(c).into());
                        s = s.add(&f.mul(e)?.scale(&w))?;
                    }
                }
            }
            out.insert(u, s.scale(&ExactRat::new(1.into(), n.into())));
        }
        Ok(out)
    }

    /// Adams operation: every variable, inner and auxiliary, goes to its `k`-th power.
    pub fn adams(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("adams index must be positive".into()));
        }
        let mut out = self.empty_like(self.trunc.clone());
        for (u, c) in &self.terms {
            let w: Vec<u32> = u.iter().map(|e| e * k).collect();
            if out.trunc.contains(&w) {
                out.insert(w, c.adams(k));
            }
        }
        Ok(out)
    }

    /// Plethystic exponential `exp(Σ_k adams(f, k)/k)`; requires constant term 0.
    pub fn pleth_exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm("plethystic exp requires constant term 0".into()));
        }
        let mut acc = self.empty_like(self.trunc.clone());
        for k in 1..=self.trunc.max_total_degree().max(1) {
            let term = self.adams(k)?.scale(&ExactRat::new(1.into(), k.into()));
            acc = acc.add(&term)?;
        }
        acc.exp()
    }

    /// Plethystic logarithm `Σ_k μ(k)/k adams(log g, k)`; requires constant term 1.
    pub fn pleth_log(&self) -> Result<Self> {
        let l = self.log()?;
        let mut acc = self.empty_like(self.trunc.clone());
        for k in 1..=self.trunc.max_total_degree().max(1) {
            let mu = moebius(k as u64);
            if mu == 0 {
                continue;
            }
            let term = l.adams(k)?.scale(&ExactRat::new(mu.into(), k.into()));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

/// Ordinary operations under the names used throughout the crate.
pub fn s_add<C: Coeff>(a: &TruncSeries<C>, b: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.add(b)
}

pub fn s_mul<C: Coeff>(a: &TruncSeries<C>, b: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.mul(b)
}

pub fn s_inv<C: Coeff>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.inv()
}

pub fn s_log<C: Coeff>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.log()
}

pub fn s_exp<C: Coeff>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.exp()
}

pub fn adams<C: Coeff>(a: &TruncSeries<C>, k: u32) -> Result<TruncSeries<C>> {
    a.adams(k)
}

pub fn pleth_exp<C: Coeff>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.pleth_exp()
}

pub fn pleth_log<C: Coeff>(a: &TruncSeries<C>) -> Result<TruncSeries<C>> {
    a.pleth_log()
}
