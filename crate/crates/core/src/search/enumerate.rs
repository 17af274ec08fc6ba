//! Complement-side enumeration: every `t`-subset of the `C(n,3)` triples of
//! an `n`-vertex set (`n <= 8`, so a subset is a `u64` rank mask), visited in
//! colex order and split into fixed chunks of that order for parallel work.

use rayon::prelude::*;

use crate::canon::is_canonical;
use crate::error::{capability, param, Result};
use crate::hypergraph::{binom3, Hypergraph};

/// Chunk length of the parallel partition and of checkpoint frames.
pub const CHUNK: u64 = 10_000_000;

/// `C(n, k)`, exact for every value used here (`n <= 64`, `k <= 8`).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The `index`-th `t`-subset of `0..items` in colex order, as a bitmask.
pub fn unrank_combination(items: usize, t: usize, mut index: u64) -> u64 {
    debug_assert!(index < binomial(items as u64, t as u64));
    let mut mask = 0u64;
    let mut hi = items as u64;
    for i in (1..=t as u64).rev() {
        // Largest c < hi with C(c, i) <= index.
        let mut c = hi - 1;
        while binomial(c, i) > index {
            c -= 1;
        }
        mask |= 1 << c;
        index -= binomial(c, i);
        hi = c;
    }
    mask
}

/// Colex rank of a subset mask, inverse of [`unrank_combination`].
pub fn rank_combination(mask: u64) -> u64 {
    let mut bits = mask;
    let mut i = 1;
    let mut rank = 0;
    while bits != 0 {
        let c = bits.trailing_zeros() as u64;
        bits &= bits - 1;
        rank += binomial(c, i);
        i += 1;
    }
    rank
}

/// The next larger integer with the same popcount.
#[inline]
pub fn next_combination(x: u64) -> u64 {
    let c = x & x.wrapping_neg();
    let r = x + c;
    (((r ^ x) >> 2) / c) | r
}

/// Calls `f` on `count` consecutive `t`-subsets starting at colex index `start`.
pub fn for_each_combination_in<F: FnMut(u64)>(items: usize, t: usize, start: u64, count: u64, mut f: F) {
    if count == 0 {
        return;
    }
    let mut x = unrank_combination(items, t, start);
    for i in 0..count {
        f(x);
        if t == 0 || i + 1 == count {
            break;
        }
        x = next_combination(x);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dedup {
    None,
    /// Keep only complements that are their own canonical representative.
    Canonical,
}

/// One complement-side scan: all `target`-edge complements on `n` vertices.
#[derive(Clone, Debug)]
pub struct EnumerationPlan {
    pub n: usize,
    pub target: usize,
    pub dedup: Dedup,
}

/// Result of scanning a range of a plan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanTally {
    /// States drawn from the index space.
    pub visited: u64,
    /// States removed by deduplication before the predicate ran.
    pub deduplicated: u64,
    /// Complements accepted by the predicate, in colex order.
    pub survivors: Vec<u64>,
}

impl EnumerationPlan {
    pub fn new(n: usize, target: usize, dedup: Dedup) -> Result<Self> {
        if n > 8 {
            return Err(capability(format!("complement enumeration is limited to n <= 8, got {n}")));
        }
        if target > binom3(n) {
            return Err(param(format!("target {target} exceeds C({n},3)")));
        }
        Ok(EnumerationPlan { n, target, dedup })
    }

    pub fn items(&self) -> usize {
        binom3(self.n)
    }

    /// Number of complements in the index space.
    pub fn space(&self) -> u64 {
        binomial(self.items() as u64, self.target as u64)
    }

    /// Scans index range `[start, end)`, keeping complements accepted by `keep`.
    /// Work is split into [`CHUNK`]-sized pieces; the result does not depend
    /// on the thread count.
    pub fn scan_range<F>(&self, start: u64, end: u64, keep: F) -> ScanTally
    where
        F: Fn(u64) -> bool + Sync,
    {
        let chunk = CHUNK.min(((end - start) / 64).max(1 << 12));
        let starts: Vec<u64> = (start..end).step_by(chunk as usize).collect();
        let parts: Vec<ScanTally> = starts
            .par_iter()
            .map(|&s| {
                let count = chunk.min(end - s);
                let mut tally = ScanTally { visited: count, ..Default::default() };
                for_each_combination_in(self.items(), self.target, s, count, |mask| {
                    if self.dedup == Dedup::Canonical && !self.is_canonical_complement(mask) {
                        tally.deduplicated += 1;
                    } else if keep(mask) {
                        tally.survivors.push(mask);
                    }
                });
                tally
            })
            .collect();
        let mut out = ScanTally::default();
        for p in parts {
            out.visited += p.visited;
            out.deduplicated += p.deduplicated;
            out.survivors.extend(p.survivors);
        }
        out
    }

    pub fn scan<F>(&self, keep: F) -> ScanTally
    where
        F: Fn(u64) -> bool + Sync,
    {
        self.scan_range(0, self.space(), keep)
    }

    fn is_canonical_complement(&self, mask: u64) -> bool {
        let h = Hypergraph::from_mask(self.n, mask).expect("n <= 8");
        is_canonical(&h).expect("n <= 8 is within the canonical cap")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(35, 5), 324_632);
        assert_eq!(binomial(35, 4), 52_360);
        assert_eq!(binomial(56, 7), 231_917_400);
        assert_eq!(binomial(56, 8), 1_420_494_075);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn rank_unrank_and_successor_agree() {
        for (items, t) in [(10, 3), (20, 2), (9, 0), (7, 7), (12, 5)] {
            let total = binomial(items as u64, t as u64);
            let mut x = unrank_combination(items, t, 0);
            for i in 0..total {
                assert_eq!(unrank_combination(items, t, i), x);
                assert_eq!(rank_combination(x), i);
                assert_eq!(x.count_ones() as usize, t);
                assert!(x >> items == 0);
                if t > 0 && i + 1 < total {
                    let y = next_combination(x);
                    assert!(y > x);
                    x = y;
                }
            }
        }
    }

    #[test]
    fn ranges_partition_the_space() {
        let plan = EnumerationPlan::new(6, 3, Dedup::None).unwrap();
        let all = plan.scan(|m| m.count_ones() == 3);
        assert_eq!(all.visited, 1140);
        assert_eq!(all.survivors.len(), 1140);
        let a = plan.scan_range(0, 500, |_| true);
        let b = plan.scan_range(500, 1140, |_| true);
        let mut joined = a.survivors;
        joined.extend(b.survivors);
        assert_eq!(joined, all.survivors);
        assert!(joined.windows(2).all(|w| w[0] < w[1]));
    }
}
