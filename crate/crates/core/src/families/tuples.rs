//! Partition-tuple sums shared by the Nakajima and Hua generating functions.
//!
//! Both are built from terms `s^{e(π)} / Π_i Π_k Π_{j=1}^{m_k(π^i)} (1 − s^j)` with
//! `e(π) = Σ_i n(π^i,π^i) − Σ_{i→j} n(π^i,π^j) − Σ_i w_i l(π^i)`.

use num_traits::One;

use super::Quiver;
use crate::arith::scalar::rat;
use crate::arith::{ExactRat, UniLaurent, UniRatFun};
use crate::error::Result;
use crate::modp::{BoxSeries, Fp};
use crate::partitions::{enum_partitions, pairing_n, Partition};
use crate::series::{TruncSeries, Truncation};

pub(crate) struct TupleSum {
    pub caps: Vec<usize>,
    parts: Vec<Partition>,
    /// `(box index, exponent, partition ids)` per tuple.
    terms: Vec<(usize, i64, Vec<usize>)>,
    emin: i64,
    emax: i64,
    max_mult: usize,
}

impl TupleSum {
    /// `framed` selects whether the `w` term enters the exponent.
    pub fn new(q: &Quiver, caps: &[usize], framed: bool) -> Self {
        let maxcap = caps.iter().copied().max().unwrap_or(0);
        let mut parts: Vec<Partition> = Vec::new();
        let mut by_size: Vec<Vec<usize>> = Vec::new();
        for s in 0..=maxcap {
            let mut ids = Vec::new();
            for p in enum_partitions(s as u32) {
                ids.push(parts.len());
                parts.push(p);
            }
            by_size.push(ids);
        }
        let self_pair: Vec<i64> = parts.iter().map(|p| pairing_n(p, p) as i64).collect();
        let boxes = BoxSeries::zeros(caps);
        let mut terms = Vec::new();
        for idx in 0..boxes.coeffs.len() {
            let u = boxes.multi_index(idx);
            let mut choice = vec![0usize; u.len()];
            loop {
                let ids: Vec<usize> = choice.iter().zip(&u).map(|(&c, &ui)| by_size[ui][c]).collect();
                let mut e: i64 = ids.iter().map(|&i| self_pair[i]).sum();
                for &(a, b) in &q.edges {
                    e -= pairing_n(&parts[ids[a]], &parts[ids[b]]) as i64;
                }
                if framed {
                    for (i, &id) in ids.iter().enumerate() {
                        e -= q.w[i] as i64 * parts[id].length() as i64;
                    }
                }
                terms.push((idx, e, ids));
                // odometer over the Cartesian product
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < by_size[u[k]].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
        let emin = terms.iter().map(|t| t.1).min().unwrap_or(0);
        let emax = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let max_mult = parts.iter().flat_map(|p| p.multiplicities()).map(|(_, m)| m as usize).max().unwrap_or(0);
        TupleSum { caps: caps.to_vec(), parts, terms, emin, emax, max_mult }
    }

    /// The sum evaluated at `s = x` over F_p; `None` if some `1 − x^j` vanishes.
    pub fn eval(&self, f: &Fp, x: u64) -> Option<BoxSeries> {
        // inv_den[j] = Π_{i<=j} (1 − x^i)^{-1}
        let mut inv_den = vec![1u64; self.max_mult + 1];
        let mut xp = 1u64;
        for j in 1..=self.max_mult {
            xp = f.mul(xp, x);
            let d = f.sub(1, xp);
            inv_den[j] = f.mul(inv_den[j - 1], f.inv(d)?);
        }
        let part_inv: Vec<u64> = self
            .parts
            .iter()
            .map(|p| p.multiplicities().iter().fold(1u64, |acc, &(_, m)| f.mul(acc, inv_den[m as usize])))
            .collect();
        let mut pow = vec![0u64; (self.emax - self.emin + 1) as usize];
        let mut cur = f.pow_i(x, self.emin);
        for slot in pow.iter_mut() {
            *slot = cur;
            cur = f.mul(cur, x);
        }
        let mut out = BoxSeries::zeros(&self.caps);
        for (idx, e, ids) in &self.terms {
            let mut v = pow[(e - self.emin) as usize];
            for &i in ids {
                v = f.mul(v, part_inv[i]);
            }
            out.coeffs[*idx] = f.add(out.coeffs[*idx], v);
        }
        Some(out)
    }

    /// The sum as a truncated series over rational functions in `var`.
    pub fn exact(&self, var: &str) -> Result<TruncSeries<UniRatFun>> {
        let vars: Vec<String> = (0..self.caps.len()).map(|i| format!("T{i}")).collect();
        let vref: Vec<&str> = vars.iter().map(String::as_str).collect();
        let trunc = Truncation::Box(self.caps.iter().map(|&c| c as u32).collect());
        let boxes = BoxSeries::zeros(&self.caps);
        let mut acc: Vec<UniRatFun> = vec![UniRatFun::zero(var); boxes.coeffs.len()];
        for (idx, e, ids) in &self.terms {
            let mut den = UniLaurent::one(var);
            for &i in ids {
                for (_, m) in self.parts[i].multiplicities() {
                    for j in 1..=m as i64 {
                        let f = UniLaurent::from_terms(var, [(0, ExactRat::one()), (j, rat(-1, 1))]);
                        den = den.checked_mul(&f)?;
                    }
                }
            }
            let term = UniRatFun::new(UniLaurent::var_pow(var, *e), den)?;
            acc[*idx] = acc[*idx].checked_add(&term)?;
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .map(|(idx, c)| (boxes.multi_index(idx).iter().map(|&x| x as u32).collect::<Vec<u32>>(), c));
        TruncSeries::from_terms(&vref, trunc, var.to_string(), terms)
    }
}

/// `N / D` over F_p on a common box; `D` must have constant term 1.
pub(crate) fn box_div(f: &Fp, n: &BoxSeries, d: &BoxSeries) -> BoxSeries {
    let len = n.coeffs.len();
    let idx: Vec<Vec<usize>> = (0..len).map(|i| n.multi_index(i)).collect();
    let mut r = vec![0u64; len];
    for i in 0..len {
        let u = &idx[i];
        let mut s = n.coeffs[i];
        // Σ_{0 < c <= u} D_c R_{u-c}
        for j in 1..=i {
            let c = &idx[j];
            if d.coeffs[j] == 0 || c.iter().zip(u).any(|(ci, ui)| ci > ui) {
                continue;
            }
            let rest: Vec<usize> = u.iter().zip(c).map(|(ui, ci)| ui - ci).collect();
            s = f.sub(s, f.mul(d.coeffs[j], r[n.index(&rest)]));
        }
        r[i] = s;
    }
    BoxSeries { caps: n.caps.clone(), coeffs: r }
}
