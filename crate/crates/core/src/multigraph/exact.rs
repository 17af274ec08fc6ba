//! Exact maximum edge count of a crossing-free p-multigraph, by
//! branch-and-bound over per-pair membership sets.
//!
//! Pairs are assigned in colex order, so the 4-set `{w<x<y<z}` is checked
//! exactly once, when its last pair `yz` receives its layer set. Relabeling
//! vertices lets us assume pair `01` has the largest multiplicity `k`, and
//! permuting layers lets us take `M(0,1) = {1..k}`; every other pair then has
//! at most `k` layers, which is also the per-pair bound used for pruning.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{extremal_4multigraph, f5_lower_constructions, sets_cross, PMultigraph};
use crate::error::{capability, param, Error, Result};
use crate::graph::{pair_from_rank, pair_rank};
use crate::hypergraph::binom2;

/// Largest layer count the exact search accepts.
pub const MAX_EXACT_LAYERS: usize = 5;
/// Largest vertex count the exact search accepts.
pub const MAX_EXACT_VERTICES: usize = 6;

/// A better total and the per-pair layer masks that reach it.
type Improvement = (usize, Vec<u8>);

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Node limit; the search fails with [`Error::BudgetExhausted`] beyond it.
    pub budget: u64,
    /// Permits the `(p, n) = (5, 6)` instance.
    pub long_run: bool,
    /// Start from the best known construction instead of the empty multigraph.
    /// The answer is the same either way; this only speeds up pruning.
    pub seed_with_constructions: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 20_000_000_000, long_run: false, seed_with_constructions: true }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub max_edges: usize,
    pub witness: PMultigraph,
    /// Search nodes expanded, each one a crossing-free partial assignment.
    pub nodes: u64,
}

/// `f_p(n)` together with an extremal witness.
pub fn max_edges_no_crossing(p: usize, n: usize, budget: u64) -> Result<(usize, PMultigraph)> {
    let opts = SearchOptions { budget, ..SearchOptions::default() };
    let out = max_edges_no_crossing_with(p, n, &opts)?;
    Ok((out.max_edges, out.witness))
}

pub fn max_edges_no_crossing_with(p: usize, n: usize, opts: &SearchOptions) -> Result<SearchOutcome> {
    if p == 0 || p > MAX_EXACT_LAYERS {
        return Err(param(format!("exact search supports 1 <= p <= {MAX_EXACT_LAYERS}, got {p}")));
    }
    if n > MAX_EXACT_VERTICES {
        return Err(capability(format!(
            "exact search is limited to n <= {MAX_EXACT_VERTICES}, got {n}"
        )));
    }
    if p == 5 && n == 6 && !opts.long_run {
        return Err(capability("f5(6) is a long run; pass the long-run option"));
    }
    let pairs = binom2(n);
    if p < 3 || n < 4 {
        // No three crossing pairs can exist, so the full multigraph is optimal.
        let mut g = PMultigraph::empty(p, n)?;
        let full = ((1u16 << p) - 1) as u8;
        for r in 0..pairs {
            let (u, v) = pair_from_rank(r);
            g.set_layers(u, v, full)?;
        }
        return Ok(SearchOutcome { max_edges: p * pairs, witness: g, nodes: 0 });
    }

    let seed = if opts.seed_with_constructions { best_construction(p, n)? } else { None };
    let (mut best, mut best_memb) = match seed {
        Some(g) => (g.edge_count(), membership_of(&g)),
        None => (0, vec![0u8; pairs]),
    };

    let plan = Plan::new(p, n);
    let nodes = AtomicU64::new(0);
    let stop = AtomicBool::new(false);
    for k in (1..=p).rev() {
        if k * pairs <= best {
            break;
        }
        let first = ((1u16 << k) - 1) as u8;
        // Root partition: one task per layer set of the second pair.
        let tasks: Vec<u8> = plan.masks_upto[k].clone();
        let results: Vec<Result<Option<Improvement>>> = tasks
            .par_iter()
            .map(|&m1| {
                let mut w = Worker {
                    plan: &plan,
                    k,
                    memb: vec![0u8; pairs],
                    best,
                    best_memb: None,
                    local_nodes: 0,
                    shared_nodes: &nodes,
                    stop: &stop,
                    budget: opts.budget,
                };
                w.memb[0] = first;
                w.memb[1] = m1;
                let base = (first.count_ones() + m1.count_ones()) as usize;
                if base + (pairs - 2) * k > best {
                    w.dfs(2, base)?;
                }
                w.flush()?;
                Ok(w.best_memb.map(|m| (w.best, m)))
            })
            .collect();
        // Deterministic merge: largest total, ties to the earliest task.
        for r in results {
            if let Some((value, memb)) = r? {
                if value > best {
                    best = value;
                    best_memb = memb;
                }
            }
        }
    }
    let witness = from_membership(p, n, &best_memb)?;
    debug_assert!(witness.has_three_crossing_pairs().is_none());
    Ok(SearchOutcome { max_edges: best, witness, nodes: nodes.load(Ordering::Relaxed) })
}

fn best_construction(p: usize, n: usize) -> Result<Option<PMultigraph>> {
    let candidate = match p {
        4 => Some(extremal_4multigraph(n)?),
        5 => {
            let (a, b) = f5_lower_constructions(n)?;
            Some(if a.edge_count() >= b.edge_count() { a } else { b })
        }
        _ => None,
    };
    Ok(candidate.filter(|g| g.has_three_crossing_pairs().is_none()))
}

fn membership_of(g: &PMultigraph) -> Vec<u8> {
    (0..binom2(g.n())).map(|r| {
        let (u, v) = pair_from_rank(r);
        g.layers(u, v)
    }).collect()
}

fn from_membership(p: usize, n: usize, memb: &[u8]) -> Result<PMultigraph> {
    let mut g = PMultigraph::empty(p, n)?;
    for (r, &m) in memb.iter().enumerate() {
        let (u, v) = pair_from_rank(r);
        g.set_layers(u, v, m)?;
    }
    Ok(g)
}

struct Plan {
    /// For pair rank `r = yz`, the 4-sets it completes, as pair ranks
    /// `[wx, wy, xz, wz, xy]` (the sixth pair is `yz` itself).
    checks: Vec<Vec<[usize; 5]>>,
    /// Layer sets of size at most `k`, largest first.
    masks_upto: Vec<Vec<u8>>,
}

impl Plan {
    fn new(p: usize, n: usize) -> Self {
        let checks = (0..binom2(n))
            .map(|r| {
                let (y, z) = pair_from_rank(r);
                let mut out = Vec::new();
                for x in 0..y {
                    for w in 0..x {
                        out.push([
                            pair_rank(w, x),
                            pair_rank(w, y),
                            pair_rank(x, z),
                            pair_rank(w, z),
                            pair_rank(x, y),
                        ]);
                    }
                }
                out
            })
            .collect();
        let masks_upto = (0..=p)
            .map(|k| {
                let mut ms: Vec<u8> =
                    (0u8..(1u16 << p) as u8).filter(|m| m.count_ones() as usize <= k).collect();
                ms.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), *m));
                ms
            })
            .collect();
        Plan { checks, masks_upto }
    }
}

struct Worker<'a> {
    plan: &'a Plan,
    k: usize,
    memb: Vec<u8>,
    best: usize,
    best_memb: Option<Vec<u8>>,
    local_nodes: u64,
    shared_nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    budget: u64,
}

impl Worker<'_> {
    fn flush(&mut self) -> Result<()> {
        let total = self.shared_nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if total > self.budget || self.stop.load(Ordering::Relaxed) {
            self.stop.store(true, Ordering::Relaxed);
            return Err(Error::BudgetExhausted { budget: self.budget, best: self.best as u32 });
        }
        Ok(())
    }

    fn consistent(&self, r: usize, m: u8) -> bool {
        self.plan.checks[r].iter().all(|&[wx, wy, xz, wz, xy]| {
            let memb = &self.memb;
            !sets_cross(memb[wx] & m, memb[wy] & memb[xz], memb[wz] & memb[xy])
        })
    }

    fn dfs(&mut self, r: usize, sum: usize) -> Result<()> {
        let total = self.memb.len();
        if r == total {
            if sum > self.best {
                self.best = sum;
                self.best_memb = Some(self.memb.clone());
            }
            return Ok(());
        }
        let rest_after = total - r - 1;
        let plan = self.plan;
        for &m in &plan.masks_upto[self.k] {
            let pc = m.count_ones() as usize;
            if sum + pc + rest_after * self.k <= self.best {
                break;
            }
            if !self.consistent(r, m) {
                continue;
            }
            self.local_nodes += 1;
            if self.local_nodes >= 1 << 16 {
                self.flush()?;
            }
            self.memb[r] = m;
            self.dfs(r + 1, sum + pc)?;
        }
        self.memb[r] = 0;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// All 16^6 assignments of layer sets to the six pairs of a 4-set.
    fn brute_force_4_4() -> usize {
        let mut best = 0;
        for code in 0u32..1 << 24 {
            let m: Vec<u8> = (0..6).map(|i| (code >> (4 * i) & 0xf) as u8).collect();
            // Colex pair ranks on {0,1,2,3}: 01 02 12 03 13 23.
            let crossing = sets_cross(m[0] & m[5], m[1] & m[4], m[3] & m[2]);
            if !crossing {
                best = best.max(m.iter().map(|x| x.count_ones() as usize).sum());
            }
        }
        best
    }

    #[test]
    fn f4_of_4_matches_brute_force() {
        let oracle = brute_force_4_4();
        assert_eq!(oracle, 20);
        let opts = SearchOptions { seed_with_constructions: false, ..Default::default() };
        let out = max_edges_no_crossing_with(4, 4, &opts).unwrap();
        assert_eq!(out.max_edges, oracle);
        assert!(out.witness.has_three_crossing_pairs().is_none());
        assert_eq!(out.witness.edge_count(), 20);
    }

    #[test]
    fn unseeded_and_seeded_agree() {
        for (p, n) in [(3, 4), (3, 5), (4, 4), (5, 4)] {
            let plain = SearchOptions { seed_with_constructions: false, ..Default::default() };
            let a = max_edges_no_crossing_with(p, n, &plain).unwrap();
            let b = max_edges_no_crossing_with(p, n, &SearchOptions::default()).unwrap();
            assert_eq!(a.max_edges, b.max_edges, "p={p} n={n}");
        }
    }

    #[test]
    fn trivial_instances() {
        assert_eq!(max_edges_no_crossing(5, 3, 1).unwrap().0, 15);
        assert_eq!(max_edges_no_crossing(2, 5, 1).unwrap().0, 20);
    }

    #[test]
    fn guards() {
        assert!(matches!(max_edges_no_crossing(6, 4, 10), Err(Error::Parameter(_))));
        assert!(matches!(max_edges_no_crossing(4, 7, 10), Err(Error::Capability(_))));
        assert!(matches!(max_edges_no_crossing(5, 6, 10), Err(Error::Capability(_))));
        let r = max_edges_no_crossing_with(
            5,
            5,
            &SearchOptions { budget: 10, seed_with_constructions: false, ..Default::default() },
        );
        assert!(matches!(r, Err(Error::BudgetExhausted { budget: 10, .. })));
    }
}
