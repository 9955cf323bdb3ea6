//! Integer partitions and the statistics the generating functions need.

use std::fmt;

use num_traits::Zero;

use crate::arith::ExactInt;

/// A weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
    size: u32,
}

impl Partition {
    /// Sorts `parts` into decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let size = parts.iter().sum();
        Partition { parts, size }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new(), size: 0 }
    }

    /// `(1^s)`.
    pub fn column(s: u32) -> Self {
        Partition { parts: vec![1; s as usize], size: s }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn length(&self) -> u32 {
        self.parts.len() as u32
    }

    pub fn multiplicity(&self, k: u32) -> u32 {
        self.parts.iter().filter(|&&p| p == k).count() as u32
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    pub fn conjugate(&self) -> Self {
        let first = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=first)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts, size: self.size }
    }

    /// `(arm, leg)` for each cell `(i, j)`, rows first: arm = λ_i − j, leg = λ'_j − i.
    pub fn cells_arm_leg(&self) -> Vec<(u32, u32)> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                out.push((row - j - 1, conj.parts[j as usize] - i as u32 - 1));
            }
        }
        out
    }

    /// `n(λ) = Σ (i − 1) λ_i`.
    pub fn n_stat(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// `n(λ, μ) = Σ_{i,j} min(λ_i, μ_j)`.
pub fn pairing_n(a: &Partition, b: &Partition) -> u64 {
    // Σ_k λ'_k μ'_k over columns
    let (ca, cb) = (a.conjugate(), b.conjugate());
    ca.parts.iter().zip(&cb.parts).map(|(&x, &y)| x as u64 * y as u64).sum()
}

/// All partitions of `n` in reverse lexicographic order, `(n)` first and `(1^n)` last.
pub fn enum_partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: cur.clone(), size: cur.iter().sum() });
        return;
    }
    for p in (1..=rem.min(max)).rev() {
        cur.push(p);
        fill(rem - p, p, cur, out);
        cur.pop();
    }
}

/// `enum_partitions(k)` for every `k <= n`.
pub fn partitions_up_to(n: u32) -> Vec<Vec<Partition>> {
    (0..=n).map(enum_partitions).collect()
}

/// `counts[n][l]` = number of partitions of `n` with exactly `l` parts, for `n <= max`.
pub fn partition_counts_by_length(max: usize) -> Vec<Vec<ExactInt>> {
    // p(n, l) = p(n-1, l-1) + p(n-l, l)
    let mut t = vec![vec![ExactInt::zero(); max + 1]; max + 1];
    t[0][0] = 1.into();
    for n in 1..=max {
        for l in 1..=n {
            let a = t[n - 1][l - 1].clone();
            let b = if n >= l { t[n - l][l].clone() } else { ExactInt::zero() };
            t[n][l] = a + b;
        }
    }
    t
}

/// Number of partitions of `n`.
pub fn partition_count(n: usize) -> ExactInt {
    // p(k) = Σ_{m <= k} [parts of size m], the classical coin DP
    let mut p = vec![ExactInt::zero(); n + 1];
    p[0] = 1.into();
    for m in 1..=n {
        for k in m..=n {
            let t = p[k - m].clone();
            p[k] += t;
        }
    }
    p[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Euler's pentagonal recurrence.
    fn euler_p(n: usize) -> i64 {
        let mut p = vec![0i64; n + 1];
        p[0] = 1;
        for m in 1..=n {
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > m {
                    break;
                }
                let s = if k % 2 == 1 { 1 } else { -1 };
                p[m] += s * p[m - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= m {
                    p[m] += s * p[m - g2];
                }
                k += 1;
            }
        }
        p[n]
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enum_partitions(0), vec![Partition::empty()]);
        assert_eq!(enum_partitions(4).len(), 5);
        assert_eq!(enum_partitions(8).len() as i64, euler_p(8));
        assert_eq!(euler_p(8), 22);
        for n in 0..30 {
            assert_eq!(ExactInt::from(euler_p(n)), partition_count(n));
        }
        let p4: Vec<Vec<u32>> = enum_partitions(4).iter().map(|p| p.parts().to_vec()).collect();
        assert_eq!(p4, vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
    }

    #[test]
    fn pairing_examples() {
        let a = Partition::new(vec![2, 1]);
        assert_eq!(pairing_n(&a, &Partition::column(3)), 6);
        assert_eq!(pairing_n(&Partition::empty(), &a), 0);
        assert_eq!(pairing_n(&a, &a), 5);
    }

    #[test]
    fn conjugates() {
        assert_eq!(Partition::new(vec![2, 1]).conjugate(), Partition::new(vec![2, 1]));
        assert_eq!(Partition::new(vec![3]).conjugate(), Partition::column(3));
        assert_eq!(Partition::new(vec![4, 2, 1]).conjugate(), Partition::new(vec![3, 2, 1, 1]));
    }

    #[test]
    fn arms_and_legs() {
        assert_eq!(Partition::new(vec![1]).cells_arm_leg(), vec![(0, 0)]);
        assert_eq!(Partition::new(vec![2]).cells_arm_leg(), vec![(1, 0), (0, 0)]);
        let mut c = Partition::new(vec![2, 1]).cells_arm_leg();
        c.sort();
        assert_eq!(c, vec![(0, 0), (0, 0), (1, 1)]);
    }

    #[test]
    fn lengths() {
        let p = Partition::new(vec![3, 1, 1]);
        assert_eq!(p.length(), 3);
        assert_eq!(p.multiplicity(1), 2);
        assert_eq!(Partition::empty().length(), 0);
        assert_eq!(p.multiplicities(), vec![(3, 1), (1, 2)]);
    }

    #[test]
    fn counts_by_length() {
        let t = partition_counts_by_length(12);
        for n in 0..=12u32 {
            let parts = enum_partitions(n);
            for l in 0..=n {
                let c = parts.iter().filter(|p| p.length() == l).count();
                assert_eq!(t[n as usize][l as usize], ExactInt::from(c));
            }
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        for n in 0..=12 {
            for p in enum_partitions(n) {
                assert_eq!(p.conjugate().conjugate(), p);
            }
        }
    }

    #[test]
    fn column_pairing_identity() {
        for n in 0..=10 {
            for p in enum_partitions(n) {
                for s in 0..=10 {
                    assert_eq!(pairing_n(&p, &Partition::column(s)), s as u64 * p.length() as u64);
                }
            }
        }
    }

    #[test]
    fn cell_statistics_match_conjugate() {
        for n in 0..=9 {
            for p in enum_partitions(n) {
                let cells = p.cells_arm_leg();
                assert_eq!(cells.len() as u32, p.size());
                // transposing swaps arm and leg
                let mut a: Vec<(u32, u32)> = cells.iter().map(|&(x, y)| (y, x)).collect();
                let mut b = p.conjugate().cells_arm_leg();
                a.sort();
                b.sort();
                assert_eq!(a, b);
            }
        }
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        prop::collection::vec(1u32..8, 0..7).prop_map(Partition::new)
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_and_direct(a in arb_partition(), b in arb_partition()) {
            prop_assert_eq!(pairing_n(&a, &b), pairing_n(&b, &a));
            let direct: u64 = a.parts().iter()
                .flat_map(|&x| b.parts().iter().map(move |&y| x.min(y) as u64))
                .sum();
            prop_assert_eq!(pairing_n(&a, &b), direct);
        }
    }
}
