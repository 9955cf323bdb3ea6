//! External activity polynomials `R_G(q) = T_G(1, q)` of multigraphs and
//! counts of connected labelled graphs by excess.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::arith::scalar::binomial_unchecked;
use crate::arith::{ExactInt, ExactRat, UniLaurent, ZPoly};
use crate::error::{Error, Result};
use crate::series::{TruncSeries, Truncation};

/// Undirected multigraph; loops are `(i, i)`, parallel edges repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut e: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("edge ({a},{b}) out of range for {n} vertices")));
            }
            e.push((a.min(b), a.max(b)));
        }
        e.sort_unstable();
        Ok(Graph { n, edges: e })
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    pub fn complete_bipartite(m: usize, n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, m + j))).collect();
        Graph { n: m + n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("indices in range")
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// First Betti number `#E − #V + 1` (for connected graphs).
    pub fn first_betti(&self) -> i64 {
        self.edges.len() as i64 - self.n as i64 + 1
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut uf = UnionFind::new(self.n);
        let mut comps = self.n;
        for &(a, b) in &self.edges {
            if uf.union(a, b) {
                comps -= 1;
            }
        }
        comps == 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Largest edge count accepted by [`external_activity_oracle`].
pub const ORACLE_EDGE_CAP: usize = 22;

/// `R_G(q) = Σ (q−1)^{b_1(A)}` over connected spanning edge subsets `A`, by enumeration.
pub fn external_activity_oracle(g: &Graph) -> Result<UniLaurent> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let m = g.num_edges();
    if m > ORACLE_EDGE_CAP {
        return Err(Error::SizeCap(format!("{m} edges exceeds the enumeration cap {ORACLE_EDGE_CAP}")));
    }
    // by_size[k] = number of connected spanning subsets with k edges
    let mut by_size = vec![0u64; m + 1];
    for mask in 0u64..(1u64 << m) {
        let mut uf = UnionFind::new(g.n);
        let mut comps = g.n;
        for (i, &(a, b)) in g.edges.iter().enumerate() {
            if mask >> i & 1 == 1 && uf.union(a, b) {
                comps -= 1;
            }
        }
        if comps == 1 {
            by_size[mask.count_ones() as usize] += 1;
        }
    }
    let q_minus_1 = ZPoly::from_i64(&[-1, 1]);
    let mut r = ZPoly::zero();
    let mut pow = ZPoly::one();
    for (k, &c) in by_size.iter().enumerate().skip(g.n - 1) {
        if k > g.n - 1 {
            pow = pow.mul(&q_minus_1);
        }
        r = r.add(&pow.scale(&ExactInt::from(c)));
    }
    Ok(r.to_laurent("q"))
}

/// Multigraph state for deletion–contraction (loops are factored out eagerly).
#[derive(Clone)]
struct Multi {
    n: usize,
    adj: Vec<u32>,
}

impl Multi {
    fn m(&self, i: usize, j: usize) -> u32 {
        self.adj[i * self.n + j]
    }

    fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for u in 0..self.n {
                if !seen[u] && self.m(v, u) > 0 {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    fn remove_vertex(&self, v: usize) -> Multi {
        let n = self.n - 1;
        let keep: Vec<usize> = (0..self.n).filter(|&i| i != v).collect();
        let mut adj = vec![0; n * n];
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                adj[a * n + b] = self.m(i, j);
            }
        }
        Multi { n, adj }
    }

    fn without_class(&self, u: usize, v: usize) -> Multi {
        let mut g = self.clone();
        g.adj[u * self.n + v] = 0;
        g.adj[v * self.n + u] = 0;
        g
    }

    /// Identifies `v` with `u`, dropping the `u`–`v` edges.
    fn contract(&self, u: usize, v: usize) -> Multi {
        let mut g = self.without_class(u, v);
        for w in 0..self.n {
            if w != u && w != v {
                let add = g.m(v, w);
                g.adj[u * self.n + w] += add;
                g.adj[w * self.n + u] += add;
            }
        }
        g.remove_vertex(v)
    }

    fn degree(&self, v: usize) -> u32 {
        (0..self.n).map(|u| self.m(v, u)).sum()
    }

    /// Canonical-ish relabelling: colour refinement plus bounded tie-breaking search.
    fn canonical_key(&self) -> (Vec<u32>, Vec<usize>) {
        let n = self.n;
        let mut color: Vec<u64> = (0..n).map(|v| self.degree(v) as u64).collect();
        let mut classes = 0;
        loop {
            let sigs: Vec<(u64, Vec<(u64, u32)>)> = (0..n)
                .map(|v| {
                    let mut s: Vec<(u64, u32)> =
                        (0..n).filter(|&u| self.m(v, u) > 0).map(|u| (color[u], self.m(v, u))).collect();
                    s.sort_unstable();
                    (color[v], s)
                })
                .collect();
            let mut distinct = sigs.clone();
            distinct.sort();
            distinct.dedup();
            color = sigs.iter().map(|s| distinct.binary_search(s).unwrap() as u64).collect();
            if distinct.len() == classes {
                break;
            }
            classes = distinct.len();
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (color[v], v));
        // cells of equal colour
        let mut cells: Vec<(usize, usize)> = Vec::new();
        let mut i = 0;
        while i < n {
            let mut j = i + 1;
            while j < n && color[order[j]] == color[order[i]] {
                j += 1;
            }
            cells.push((i, j));
            i = j;
        }
        let budget: u64 = cells
            .iter()
            .map(|&(a, b)| (1..=(b - a) as u64).product::<u64>())
            .try_fold(1u64, |acc, f| acc.checked_mul(f))
            .unwrap_or(u64::MAX);
        let encode = |ord: &[usize]| -> Vec<u32> {
            let mut key = Vec::with_capacity(n * (n - 1) / 2 + 1);
            key.push(n as u32);
            for a in 0..n {
                for b in a + 1..n {
                    key.push(self.m(ord[a], ord[b]));
                }
            }
            key
        };
        if budget <= 240 {
            let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
            let mut cur = order.clone();
            permute_cells(&cells, 0, &mut cur, &mut |ord| {
                let k = encode(ord);
                if best.as_ref().map_or(true, |(b, _)| k < *b) {
                    best = Some((k, ord.to_vec()));
                }
            });
            best.unwrap()
        } else {
            (encode(&order), order)
        }
    }
}

fn permute_cells(cells: &[(usize, usize)], idx: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if idx == cells.len() {
        f(cur);
        return;
    }
    let (a, b) = cells[idx];
    heap_permute(cur, a, b, b - a, &mut |c| permute_cells(cells, idx + 1, c, f));
}

fn heap_permute(cur: &mut Vec<usize>, a: usize, b: usize, k: usize, f: &mut dyn FnMut(&mut Vec<usize>)) {
    if k <= 1 {
        f(cur);
        return;
    }
    for i in 0..k {
        heap_permute(cur, a, b, k - 1, f);
        if k % 2 == 0 {
            cur.swap(a + i, a + k - 1);
        } else {
            cur.swap(a, a + k - 1);
        }
    }
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
fn q_integer(k: u32) -> ZPoly {
    ZPoly::new(vec![ExactInt::one(); k as usize])
}

struct DcSolver {
    memo: HashMap<Vec<u32>, ZPoly>,
}

impl DcSolver {
    fn solve(&mut self, g: Multi) -> ZPoly {
        if g.n == 1 {
            return ZPoly::one();
        }
        // a vertex with a single neighbour: its edge class is a bridge class
        for v in 0..g.n {
            let nbrs: Vec<usize> = (0..g.n).filter(|&u| g.m(v, u) > 0).collect();
            if nbrs.len() == 1 {
                let k = g.m(v, nbrs[0]);
                return q_integer(k).mul(&self.solve(g.remove_vertex(v)));
            }
        }
        let (key, order) = g.canonical_key();
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        // first edge class in canonical order
        let (u, v) = (0..g.n)
            .flat_map(|a| (a + 1..g.n).map(move |b| (a, b)))
            .map(|(a, b)| (order[a], order[b]))
            .find(|&(a, b)| g.m(a, b) > 0)
            .expect("connected graph with at least two vertices has an edge");
        let k = g.m(u, v);
        let deleted = g.without_class(u, v);
        let mut r = if deleted.connected() { self.solve(deleted) } else { ZPoly::zero() };
        r = r.add(&q_integer(k).mul(&self.solve(g.contract(u, v))));
        self.memo.insert(key, r.clone());
        r
    }
}

/// `R_G(q)` by deletion–contraction over parallel classes, memoised on a canonical relabelling.
pub fn external_activity_dc(g: &Graph) -> Result<UniLaurent> {
    Ok(external_activity_zpoly(g)?.to_laurent("q"))
}

pub(crate) fn external_activity_zpoly(g: &Graph) -> Result<ZPoly> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n;
    let mut adj = vec![0u32; n * n];
    let mut loops = 0usize;
    for &(a, b) in &g.edges {
        if a == b {
            loops += 1;
        } else {
            adj[a * n + b] += 1;
            adj[b * n + a] += 1;
        }
    }
    let mut solver = DcSolver { memo: HashMap::new() };
    let r = solver.solve(Multi { n, adj });
    // each loop contributes a factor q
    Ok(r.shift(loops))
}

/// Largest `m·n` accepted by [`bipartite_r`].
pub const BIPARTITE_EDGE_CAP: usize = 40;

/// `R_{K_{m,n}}(q)`.
pub fn bipartite_r(m: usize, n: usize) -> Result<UniLaurent> {
    if m == 0 || n == 0 {
        return Err(Error::OutOfRange("complete bipartite graph needs m, n >= 1".into()));
    }
    if m * n > BIPARTITE_EDGE_CAP {
        return Err(Error::SizeCap(format!("K_{{{m},{n}}} has more than {BIPARTITE_EDGE_CAP} edges")));
    }
    external_activity_dc(&Graph::complete_bipartite(m, n))
}

/// `ℓ_n(q) = (q−1)^{n−1} R_{K_n}(q)` for `n = 0..=max`, from the logarithm of `Σ q^{C(n,2)} u^n/n!`.
fn complete_graph_ell(max: usize) -> Vec<ZPoly> {
    let g = |m: usize| ZPoly::monomial(m * m.saturating_sub(1) / 2, ExactInt::one());
    let mut ell: Vec<ZPoly> = vec![ZPoly::zero()];
    for n in 1..=max {
        let mut acc = g(n);
        for k in 1..n {
            let c = binomial_unchecked((n - 1) as u64, (k - 1) as u64);
            let shift = (n - k) * (n - k - 1) / 2;
            acc = acc.sub(&ell[k].shift(shift).scale(&c));
        }
        ell.push(acc);
    }
    ell
}

/// `R_{K_n}(q)` for `n = 1..=max` (index 0 unused), with exact division by powers of `q − 1`.
pub fn complete_graph_polys(max: usize) -> Result<Vec<ZPoly>> {
    let ell = complete_graph_ell(max);
    let mut out = vec![ZPoly::zero()];
    for (n, l) in ell.into_iter().enumerate().skip(1) {
        let mut p = l;
        for _ in 1..n {
            p = p.div_linear(&ExactInt::one())?;
        }
        out.push(p);
    }
    Ok(out)
}

pub fn complete_graph_r(n: usize) -> Result<ZPoly> {
    if n == 0 {
        return Err(Error::OutOfRange("K_0".into()));
    }
    Ok(complete_graph_polys(n)?.pop().unwrap())
}

/// `Σ_{n<=N} R_{K_n}(q) T^n/n!` as a truncated series with Laurent coefficients in `q`.
pub fn complete_graph_r_series(max: u32) -> Result<TruncSeries<UniLaurent>> {
    if max == 0 {
        return Err(Error::OutOfRange("series bound must be positive".into()));
    }
    let polys = complete_graph_polys(max as usize)?;
    let mut fact = ExactInt::one();
    let mut terms = Vec::new();
    for (n, p) in polys.iter().enumerate().skip(1) {
        fact *= n;
        let c = p.to_laurent("q").scale(&ExactRat::new(ExactInt::one(), fact.clone()));
        terms.push((vec![n as u32], c));
    }
    TruncSeries::from_terms(&["T"], Truncation::Total(max), "q".to_string(), terms)
}

/// `table[n][k]` = number of connected labelled graphs on `n` vertices with `n+k−1` edges,
/// for `1 <= n <= max` and `0 <= k < kmax`.
///
/// Works with `H = G · exp(−W/η)`, where `G` counts all graphs with weight
/// `η^{edges − vertices}` and `W` is the tree EGF; `H` has no negative powers of
/// `η`, so `log H` can be computed modulo `η^{kmax−1}`.
pub fn connected_count_table(max: usize, kmax: usize) -> Result<Vec<Vec<ExactInt>>> {
    let mut table = vec![vec![ExactInt::zero(); kmax]; max + 1];
    if kmax == 0 {
        return Ok(table);
    }
    // trees: n^{n-2}
    let trees: Vec<ExactInt> = (0..=max)
        .map(|s| match s {
            0 => ExactInt::zero(),
            1 => ExactInt::one(),
            _ => num_traits::pow(ExactInt::from(s), s - 2),
        })
        .collect();
    for n in 1..=max {
        table[n][0] = trees[n].clone();
    }
    if kmax == 1 {
        return Ok(table);
    }
    let kk = kmax - 1; // number of η powers kept in H: η^0..η^{kk-1}
    // x[b][j] = b! [T^b y^j] exp(−y W)
    let mut x: Vec<Vec<ExactInt>> = vec![vec![ExactInt::one()]];
    for b in 1..=max {
        let mut xb = vec![ExactInt::zero(); b + 1];
        for s in 1..=b {
            let c = binomial_unchecked((b - 1) as u64, (s - 1) as u64) * &trees[s];
            for (j, v) in x[b - s].iter().enumerate() {
                if !v.is_zero() {
                    xb[j + 1] -= &c * v;
                }
            }
        }
        x.push(xb);
    }
    // binom[a][e] = C(C(a,2), e) for e <= max + kk
    let emax = max + kk + 1;
    let binom: Vec<Vec<ExactInt>> = (0..=max)
        .map(|a| {
            let top = (a * a.saturating_sub(1) / 2) as u64;
            let mut row = Vec::with_capacity(emax + 1);
            let mut c = ExactInt::one();
            for e in 0..=emax as u64 {
                if e > top {
                    c = ExactInt::zero();
                }
                row.push(c.clone());
                if e < top {
                    c = c * (top - e) / (e + 1);
                }
            }
            row
        })
        .collect();
    // h[n][m] = n! [T^n η^m] H, for m = -1..kk-1 (index m+1)
    let mut h: Vec<Vec<ExactInt>> = vec![vec![ExactInt::zero(); kk + 1]; max + 1];
    h[0][1] = ExactInt::one();
    for n in 1..=max {
        for a in 0..=n {
            let cna = binomial_unchecked(n as u64, a as u64);
            let xb = &x[n - a];
            for (mi, slot) in h[n].iter_mut().enumerate() {
                let m = mi as i64 - 1;
                let mut s = ExactInt::zero();
                for (j, v) in xb.iter().enumerate() {
                    let e = m + a as i64 + j as i64;
                    if e < 0 || v.is_zero() {
                        continue;
                    }
                    s += v * &binom[a][e as usize];
                }
                if !s.is_zero() {
                    *slot += &cna * s;
                }
            }
        }
        if !h[n][0].is_zero() {
            return Err(Error::Identity(format!("negative excess survives at n = {n}")));
        }
    }
    // c = log H as an EGF in T with coefficients polynomial in η
    let mut c: Vec<Vec<ExactInt>> = vec![vec![ExactInt::zero(); kk]; max + 1];
    for n in 1..=max {
        let mut cn: Vec<ExactInt> = h[n][1..].to_vec();
        for k in 1..n {
            let w = binomial_unchecked((n - 1) as u64, (k - 1) as u64);
            for i in 0..kk {
                if c[k][i].is_zero() {
                    continue;
                }
                for j in 0..kk - i {
                    let t = &h[n - k][j + 1];
                    if !t.is_zero() {
                        cn[i + j] -= &w * &c[k][i] * t;
                    }
                }
            }
        }
        c[n] = cn;
    }
    for n in 1..=max {
        for k in 1..kmax {
            table[n][k] = c[n][k - 1].clone();
        }
    }
    Ok(table)
}

/// Number of connected labelled graphs on `n` vertices with `n + k − 1` edges.
pub fn connected_count(n: usize, k: usize) -> Result<ExactInt> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be positive".into()));
    }
    Ok(connected_count_table(n, k + 1)?[n][k].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::scalar::rat;
    use proptest::prelude::*;

    fn q(coeffs: &[i64]) -> UniLaurent {
        UniLaurent::from_i64_coeffs("q", 0, coeffs)
    }

    #[test]
    fn oracle_examples() {
        let tree = Graph::new(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert_eq!(external_activity_oracle(&tree).unwrap(), q(&[1]));
        assert_eq!(external_activity_oracle(&Graph::complete(3)).unwrap(), q(&[2, 1]));
        let loop1 = Graph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(external_activity_oracle(&loop1).unwrap(), q(&[0, 1]));
        let disc = Graph::new(3, &[(0, 1)]).unwrap();
        assert_eq!(external_activity_oracle(&disc), Err(Error::Disconnected));
        assert!(matches!(external_activity_oracle(&Graph::complete(8)), Err(Error::SizeCap(_))));
    }

    #[test]
    fn deletion_contraction_examples() {
        for g in [Graph::complete(4), Graph::complete_bipartite(2, 3), Graph::cycle(5)] {
            assert_eq!(external_activity_dc(&g).unwrap(), external_activity_oracle(&g).unwrap());
        }
        let double = Graph::new(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(external_activity_dc(&double).unwrap(), q(&[1, 1]));
        let loop1 = Graph::new(1, &[(0, 0)]).unwrap();
        assert_eq!(external_activity_dc(&loop1).unwrap(), q(&[0, 1]));
        assert_eq!(external_activity_dc(&Graph::new(2, &[]).unwrap()), Err(Error::Disconnected));
    }

    #[test]
    fn bipartite_examples() {
        assert_eq!(bipartite_r(1, 5).unwrap(), q(&[1]));
        assert_eq!(bipartite_r(2, 2).unwrap(), q(&[3, 1]));
        assert_eq!(bipartite_r(2, 3).unwrap(), external_activity_oracle(&Graph::complete_bipartite(2, 3)).unwrap());
        assert!(matches!(bipartite_r(5, 9), Err(Error::SizeCap(_))));
    }

    #[test]
    fn complete_graph_polynomials() {
        let polys = complete_graph_polys(7).unwrap();
        assert_eq!(polys[2], ZPoly::one());
        assert_eq!(polys[3], ZPoly::from_i64(&[2, 1]));
        for n in 2..=6 {
            let dc = ZPoly::from_laurent(&external_activity_dc(&Graph::complete(n)).unwrap()).unwrap();
            assert_eq!(polys[n], dc, "K_{n}");
        }
        // R(1) counts spanning trees
        for (n, p) in polys.iter().enumerate().skip(1) {
            let cayley = if n == 1 { ExactInt::one() } else { num_traits::pow(ExactInt::from(n), n - 2) };
            assert_eq!(p.eval(&ExactInt::one()), cayley);
        }
    }

    #[test]
    fn complete_graph_series_coefficients() {
        let s = complete_graph_r_series(4).unwrap();
        assert_eq!(s.coeff(&[2]), q(&[1]).scale(&rat(1, 2)));
        assert_eq!(s.coeff(&[3]), q(&[2, 1]).scale(&rat(1, 6)));
    }

    #[test]
    fn k40_has_the_expected_degree() {
        let r = complete_graph_r(40).unwrap();
        assert_eq!(r.degree(), Some(741));
    }

    /// Brute force over all edge subsets of `K_n`.
    fn connected_brute(n: usize, edges: usize) -> u64 {
        let all = Graph::complete(n);
        let m = all.num_edges();
        (0u64..1 << m)
            .filter(|mask| mask.count_ones() as usize == edges)
            .filter(|mask| {
                let e: Vec<(usize, usize)> =
                    (0..m).filter(|i| mask >> i & 1 == 1).map(|i| all.edges()[i]).collect();
                Graph::new(n, &e).unwrap().is_connected()
            })
            .count() as u64
    }

    #[test]
    fn connected_count_examples() {
        assert_eq!(connected_count(4, 0).unwrap(), ExactInt::from(16));
        assert_eq!(connected_count(3, 1).unwrap(), ExactInt::from(1));
        assert_eq!(connected_count(4, 1).unwrap(), ExactInt::from(15));
        assert_eq!(connected_brute(4, 4), 15);
    }

    #[test]
    fn connected_counts_match_brute_force_and_shift() {
        let table = connected_count_table(6, 6).unwrap();
        for n in 1..=5 {
            for k in 0..6 {
                let e = n + k - 1;
                let expect = if e <= n * (n - 1) / 2 { connected_brute(n, e) } else { 0 };
                assert_eq!(table[n][k], ExactInt::from(expect), "n={n} k={k}");
            }
        }
        // R_{K_n}(1 + η) carries the same numbers
        let polys = complete_graph_polys(12).unwrap();
        let big = connected_count_table(12, 5).unwrap();
        for n in 1..=12 {
            let shifted = polys[n].shifted_coeffs_at_one(5);
            assert_eq!(shifted, big[n], "n={n}");
        }
    }

    #[test]
    fn connected_totals_match_classical_log() {
        // Σ_k C_{n,n+k-1} = number of connected labelled graphs (log of Σ 2^{C(n,2)} T^n/n!)
        let max = 8;
        let mut c = vec![ExactInt::zero(); max + 1];
        let g = |n: usize| num_traits::pow(ExactInt::from(2), n * n.saturating_sub(1) / 2);
        for n in 1..=max {
            let mut v = g(n);
            for k in 1..n {
                v -= binomial_unchecked((n - 1) as u64, (k - 1) as u64) * &c[k] * g(n - k);
            }
            c[n] = v;
        }
        let table = connected_count_table(max, 30).unwrap();
        for n in 1..=max {
            let s: ExactInt = table[n].iter().sum();
            assert_eq!(s, c[n], "n={n}");
        }
    }

    #[test]
    fn trees_by_cayley() {
        let t = connected_count_table(12, 1).unwrap();
        for n in 2..=12 {
            assert_eq!(t[n][0], num_traits::pow(ExactInt::from(n), n - 2));
        }
    }

    fn arb_connected_graph() -> impl Strategy<Value = Graph> {
        (2usize..6, prop::collection::vec((0usize..6, 0usize..6), 0..5)).prop_map(|(n, extra)| {
            // a random spanning path plus extra edges (possibly loops and repeats)
            let mut e: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            e.extend(extra.into_iter().map(|(a, b)| (a % n, b % n)));
            e.truncate(8);
            Graph::new(n, &e).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn dc_matches_oracle(g in arb_connected_graph()) {
            let dc = external_activity_dc(&g).unwrap();
            prop_assert_eq!(&dc, &external_activity_oracle(&g).unwrap());
            prop_assert!(dc.terms().values().all(|c| c.is_integer() && *c.numer() >= ExactInt::zero()));
        }
    }
}
