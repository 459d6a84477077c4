//! Integer partitions, Young diagram statistics and block profiles.
//!
//! Boxes are addressed `(i, j)` with `1 ≤ i ≤ λ_j`: `j` is the row (bottom row
//! first, holding the largest part) and `i` the column.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

/// Arm and leg of one box.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoxStat {
    /// Column index `i`, 1-based.
    pub col: u32,
    /// Row index `j`, 1-based.
    pub row: u32,
    /// Boxes strictly to the right in the same row.
    pub arm: u32,
    /// Boxes strictly above in the same column.
    pub leg: u32,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Sorts the parts decreasingly and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width).map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32).collect();
        Partition { parts }
    }

    /// Arm and leg of every box, row by row.
    pub fn box_stats(&self) -> Vec<BoxStat> {
        let mut out = Vec::with_capacity(self.size() as usize);
        for (jm1, &len) in self.parts.iter().enumerate() {
            for i in 1..=len {
                let leg = self.parts[jm1 + 1..].iter().filter(|&&p| p >= i).count() as u32;
                out.push(BoxStat { col: i, row: jm1 as u32 + 1, arm: len - i, leg });
            }
        }
        out
    }

    /// The multiplicity vector `(r_1, …, r_t)` with `λ = (1^{r_1} … t^{r_t})`.
    pub fn block_profile(&self) -> BlockProfile {
        let t = self.parts.first().copied().unwrap_or(0) as usize;
        let mut mult = vec![0u32; t];
        for &p in &self.parts {
            mult[p as usize - 1] += 1;
        }
        BlockProfile { mult }
    }

    /// The partition with the given multiplicities.
    pub fn from_multiplicities(mult: &[u32]) -> Self {
        let mut parts = Vec::new();
        for (i, &r) in mult.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(i as u32 + 1, r as usize));
        }
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// `⟨λ, μ⟩ = Σ_i λ'_i μ'_i`.
pub fn pairing(lambda: &Partition, mu: &Partition) -> u64 {
    let a = lambda.conjugate();
    let b = mu.conjugate();
    a.parts.iter().zip(b.parts.iter()).map(|(&x, &y)| x as u64 * y as u64).sum()
}

/// All partitions of `n`, largest parts first, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `r`, by size and then as in [`partitions_of`].
pub fn partitions_up_to(r: u32) -> Vec<Partition> {
    (0..=r).flat_map(partitions_of).collect()
}

/// Multiplicities `r_1, …, r_t` of a partition, with derived chain data.
///
/// Variable indices follow the kernel convention: the `n = Σ r_i` kernel
/// variables are split into consecutive blocks of sizes `r_1, r_2, …`; block
/// `i` occupies indices `1 + r_{<i} ..= r_{≤i}` and its leader is the lowest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockProfile {
    mult: Vec<u32>,
}

impl BlockProfile {
    pub fn multiplicities(&self) -> &[u32] {
        &self.mult
    }

    /// The largest part `t`.
    pub fn t(&self) -> usize {
        self.mult.len()
    }

    /// `r_i` for `1 ≤ i`, zero past `t`.
    pub fn r(&self, i: usize) -> u32 {
        self.mult.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// Length of the partition.
    pub fn n(&self) -> u32 {
        self.mult.iter().sum()
    }

    pub fn r_below(&self, i: usize) -> u32 {
        self.mult.iter().take(i.saturating_sub(1)).sum()
    }

    pub fn r_above(&self, i: usize) -> u32 {
        self.mult.iter().skip(i).sum()
    }

    /// `Σ i·r_i`.
    pub fn weight(&self) -> u32 {
        self.mult.iter().enumerate().map(|(k, &r)| (k as u32 + 1) * r).sum()
    }

    /// Nonempty blocks as `(i, leader index, chain indices)`.
    pub fn blocks(&self) -> Vec<Block> {
        let mut out = Vec::new();
        let mut start = 1;
        for (k, &r) in self.mult.iter().enumerate() {
            if r > 0 {
                out.push(Block { part: k as u32 + 1, leader: start, size: r });
            }
            start += r;
        }
        out
    }
}

/// One nonempty block of a [`BlockProfile`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Block {
    /// The part size `i`.
    pub part: u32,
    /// Kernel index `1 + r_{<i}` of the leader.
    pub leader: u32,
    /// `r_i`.
    pub size: u32,
}

impl Block {
    /// Kernel indices of the block, leader first.
    pub fn indices(&self) -> core::ops::Range<u32> {
        self.leader..self.leader + self.size
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(partitions_up_to(1), vec![Partition::empty(), p(&[1])]);
        let three = partitions_up_to(3);
        assert_eq!(three.len(), 7);
        let want = [&[][..], &[1], &[2], &[1, 1], &[3], &[2, 1], &[1, 1, 1]];
        assert_eq!(three, want.iter().map(|v| p(v)).collect::<Vec<_>>());
        assert_eq!(partitions_up_to(4).len(), 12);
        let counts: Vec<usize> = (0..=10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]);
    }

    #[test]
    fn conjugates() {
        assert_eq!(p(&[3, 2]).conjugate(), p(&[2, 2, 1]));
        assert_eq!(p(&[1, 1]).conjugate(), p(&[2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..=12 {
            for l in partitions_of(n) {
                assert_eq!(l.conjugate().conjugate(), l);
            }
        }
    }

    #[test]
    fn arm_and_leg_of_an_inner_box() {
        let l = p(&[10, 9, 9, 9, 6, 3, 3]);
        let s = l.box_stats().into_iter().find(|b| b.col == 4 && b.row == 3).unwrap();
        assert_eq!((s.arm, s.leg), (5, 2));
    }

    #[test]
    fn small_box_stats() {
        let one = p(&[1]).box_stats();
        assert_eq!((one[0].arm, one[0].leg), (0, 0));
        let two = p(&[2]).box_stats();
        assert_eq!(two.iter().map(|b| (b.col, b.arm, b.leg)).collect::<Vec<_>>(), vec![(1, 1, 0), (2, 0, 0)]);
    }

    #[test]
    fn box_counts() {
        for n in 0..=9 {
            for l in partitions_of(n) {
                let stats = l.box_stats();
                assert_eq!(stats.len() as u32, n);
                let distinct = {
                    let mut v = l.parts().to_vec();
                    v.dedup();
                    v.len()
                };
                // a row end has no box above it exactly when the next row is shorter
                let corners = stats.iter().filter(|b| b.arm == 0 && b.leg == 0).count();
                assert_eq!(corners, distinct);
            }
        }
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&p(&[1]), &p(&[1])), 1);
        assert_eq!(pairing(&p(&[2]), &p(&[2])), 2);
        assert_eq!(pairing(&p(&[1, 1]), &p(&[1, 1])), 4);
        assert_eq!(pairing(&p(&[2, 1]), &p(&[1, 1, 1])), 6);
    }

    #[test]
    fn pairing_from_profile() {
        for n in 0..=10 {
            for l in partitions_of(n) {
                let bp = l.block_profile();
                let t = bp.t();
                let mut s = 0u64;
                for i in 1..=t {
                    s += i as u64 * (bp.r(i) as u64).pow(2);
                    for j in i + 1..=t {
                        s += 2 * i as u64 * bp.r(i) as u64 * bp.r(j) as u64;
                    }
                }
                assert_eq!(pairing(&l, &l), s, "{l}");
            }
        }
    }

    #[test]
    fn profiles() {
        let bp = p(&[2, 1, 1]).block_profile();
        assert_eq!(bp.multiplicities(), &[2, 1]);
        assert_eq!((bp.t(), bp.n(), bp.r_below(2)), (2, 3, 2));
        assert_eq!(bp.blocks().iter().map(|b| b.leader).collect::<Vec<_>>(), vec![1, 3]);
        let bp = p(&[2]).block_profile();
        assert_eq!(bp.multiplicities(), &[0, 1]);
        assert_eq!(bp.blocks(), vec![Block { part: 2, leader: 1, size: 1 }]);
        let bp = p(&[1, 1]).block_profile();
        assert_eq!(bp.multiplicities(), &[2]);
        assert_eq!(bp.blocks(), vec![Block { part: 1, leader: 1, size: 2 }]);
        for n in 0..=10 {
            for l in partitions_of(n) {
                let bp = l.block_profile();
                assert_eq!(bp.weight(), n);
                assert_eq!(Partition::from_multiplicities(bp.multiplicities()), l);
            }
        }
    }
}
