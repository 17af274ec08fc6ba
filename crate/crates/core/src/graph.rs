//! Simple graphs with bitmask adjacency, used for link graphs and matchings.

use std::fmt;

use crate::error::{param, Result};
use crate::hypergraph::{binom2, MAX_VERTICES};
use crate::permutation::for_each_permutation;
use crate::vertex_set::VertexSet;

/// Colex rank of the pair `{a, b}`.
#[inline]
pub fn pair_rank(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    binom2(hi) + lo
}

/// Inverse of [`pair_rank`].
pub fn pair_from_rank(rank: usize) -> (usize, usize) {
    let mut hi = 1;
    while binom2(hi + 1) <= rank {
        hi += 1;
    }
    (rank - binom2(hi), hi)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(param(format!("n = {n} exceeds the cap of {MAX_VERTICES} vertices")));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::empty(n)?;
        let all = VertexSet::full(n).0;
        for (v, row) in g.adj.iter_mut().enumerate() {
            *row = all & !(1 << v);
        }
        Ok(g)
    }

    /// Graph whose edge set is given as a bitmask over colex pair ranks; `n <= 11`.
    pub fn from_pair_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 11 {
            return Err(param("pair masks need n <= 11"));
        }
        if binom2(n) < 64 && mask >> binom2(n) != 0 {
            return Err(param("mask has bits beyond C(n,2)"));
        }
        let mut g = Self::empty(n)?;
        let mut bits = mask;
        while bits != 0 {
            let r = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let (a, b) = pair_from_rank(r);
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn pair_mask(&self) -> Option<u64> {
        if self.n > 11 {
            return None;
        }
        Some(self.edges().fold(0, |m, (a, b)| m | 1 << pair_rank(a, b)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(param(format!("invalid edge {{{u},{v}}} for n = {}", self.n)));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            VertexSet(self.adj[u]).intersection(VertexSet::above(u)).iter().map(move |v| (u, v))
        })
    }

    /// A perfect matching of the subgraph induced on `within`, if one exists.
    /// The matching found is the lexicographically first one.
    pub fn find_perfect_matching(&self, within: VertexSet) -> Option<Vec<(usize, usize)>> {
        let mut out = Vec::with_capacity(within.len() / 2);
        self.match_rest(within, &mut out).then_some(out)
    }

    fn match_rest(&self, rest: VertexSet, out: &mut Vec<(usize, usize)>) -> bool {
        let Some(u) = rest.iter().next() else {
            return true;
        };
        let candidates = VertexSet(self.adj[u]).intersection(rest.without(u));
        for w in candidates.iter() {
            out.push((u, w));
            if self.match_rest(rest.without(u).without(w), out) {
                return true;
            }
            out.pop();
        }
        false
    }

    pub fn has_perfect_matching(&self) -> bool {
        self.find_perfect_matching(VertexSet::full(self.n)).is_some()
    }

    /// Minimal pair mask over all relabelings; a complete isomorphism invariant.
    pub fn canonical_mask(&self) -> Result<u64> {
        if self.n > 10 {
            return Err(crate::error::capability("graph canonical forms need n <= 10"));
        }
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut best = u64::MAX;
        for_each_permutation(self.n, |p| {
            let m = edges.iter().fold(0u64, |m, &(a, b)| m | 1 << pair_rank(p[a], p[b]));
            best = best.min(m);
        });
        Ok(if edges.is_empty() { 0 } else { best })
    }

    pub fn is_isomorphic(&self, other: &Graph) -> Result<bool> {
        Ok(self.n == other.n
            && self.edge_count() == other.edge_count()
            && self.canonical_mask()? == other.canonical_mask()?)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}
