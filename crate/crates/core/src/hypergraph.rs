//! Dense 3-uniform hypergraphs.
//!
//! Edges live in a bitset indexed by the colexicographic rank of each triple,
//! `rank({a < b < c}) = C(c,3) + C(b,2) + a`. Colex order means the triples on
//! `0..n` are exactly ranks `0..C(n,3)`, so adding a vertex never renumbers an
//! existing edge. For `n <= 8` the whole edge set fits into one `u64`.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{param, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

pub const MAX_VERTICES: usize = 64;

pub const fn binom2(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

pub const fn binom3(n: usize) -> usize {
    if n < 3 {
        0
    } else {
        n * (n - 1) * (n - 2) / 6
    }
}

/// An unordered triple of distinct vertices, stored ascending.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple([u8; 3]);

impl Triple {
    /// Builds a triple from three distinct vertices given in any order.
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        if a == b || b == c || a == c {
            return Err(param(format!("triple {{{a},{b},{c}}} repeats a vertex")));
        }
        if a.max(b).max(c) >= MAX_VERTICES {
            return Err(param(format!("triple {{{a},{b},{c}}} exceeds vertex cap")));
        }
        let mut t = [a as u8, b as u8, c as u8];
        t.sort_unstable();
        Ok(Triple(t))
    }

    pub fn vertices(self) -> [usize; 3] {
        [self.0[0] as usize, self.0[1] as usize, self.0[2] as usize]
    }

    pub fn rank(self) -> usize {
        let [a, b, c] = self.vertices();
        binom3(c) + binom2(b) + a
    }

    pub fn from_rank(rank: usize) -> Self {
        triple_table()[rank]
    }

    pub fn as_set(self) -> VertexSet {
        self.vertices().into_iter().collect()
    }

    pub fn contains(self, v: usize) -> bool {
        self.vertices().contains(&v)
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        write!(f, "{a}{b}{c}")
    }
}

fn triple_table() -> &'static [Triple] {
    static TABLE: OnceLock<Vec<Triple>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = Vec::with_capacity(binom3(MAX_VERTICES));
        for c in 2..MAX_VERTICES as u8 {
            for b in 1..c {
                for a in 0..b {
                    v.push(Triple([a, b, c]));
                }
            }
        }
        v
    })
}

#[inline]
pub(crate) fn rank3(a: usize, b: usize, c: usize) -> usize {
    let (mut x, mut y, mut z) = (a, b, c);
    if x > y {
        std::mem::swap(&mut x, &mut y);
    }
    if y > z {
        std::mem::swap(&mut y, &mut z);
    }
    if x > y {
        std::mem::swap(&mut x, &mut y);
    }
    binom3(z) + binom2(y) + x
}

/// A 3-uniform hypergraph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    n: usize,
    bits: Vec<u64>,
}

impl Hypergraph {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(param(format!("n = {n} exceeds the cap of {MAX_VERTICES} vertices")));
        }
        Ok(Hypergraph { n, bits: vec![0; binom3(n).div_ceil(64)] })
    }

    pub fn complete(n: usize) -> Result<Self> {
        Ok(Self::empty(n)?.complement())
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = [usize; 3]>,
    {
        let mut h = Self::empty(n)?;
        for [a, b, c] in edges {
            h.insert(Triple::new(a, b, c)?)?;
        }
        Ok(h)
    }

    /// Builds a hypergraph on at most 8 vertices from a rank bitmask.
    pub fn from_mask(n: usize, mask: u64) -> Result<Self> {
        if n > 8 {
            return Err(param("single-word masks need n <= 8"));
        }
        let mut h = Self::empty(n)?;
        let total = binom3(n);
        if total < 64 && mask >> total != 0 {
            return Err(param("mask has bits beyond C(n,3)"));
        }
        if let Some(w) = h.bits.first_mut() {
            *w = mask;
        }
        Ok(h)
    }

    /// The edge set as one word; `None` when `n > 8`.
    pub fn mask(&self) -> Option<u64> {
        (self.n <= 8).then(|| self.bits.first().copied().unwrap_or(0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    #[inline]
    fn has_rank(&self, r: usize) -> bool {
        self.bits[r >> 6] >> (r & 63) & 1 == 1
    }

    /// Whether `{a,b,c}` is an edge. Out-of-range or degenerate triples are not.
    pub fn contains(&self, a: usize, b: usize, c: usize) -> bool {
        if a == b || b == c || a == c || a.max(b).max(c) >= self.n {
            return false;
        }
        self.has_rank(rank3(a, b, c))
    }

    pub fn contains_triple(&self, t: Triple) -> bool {
        let [a, b, c] = t.vertices();
        self.contains(a, b, c)
    }

    pub fn insert(&mut self, t: Triple) -> Result<bool> {
        let [_, _, c] = t.vertices();
        if c >= self.n {
            return Err(param(format!("triple {t:?} has a vertex >= n = {}", self.n)));
        }
        let r = t.rank();
        let fresh = !self.has_rank(r);
        self.bits[r >> 6] |= 1 << (r & 63);
        Ok(fresh)
    }

    pub fn remove(&mut self, t: Triple) -> bool {
        let [_, _, c] = t.vertices();
        if c >= self.n {
            return false;
        }
        let r = t.rank();
        let present = self.has_rank(r);
        self.bits[r >> 6] &= !(1 << (r & 63));
        present
    }

    /// Edges in ascending colex order.
    pub fn edges(&self) -> impl Iterator<Item = Triple> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(Triple::from_rank(wi * 64 + b))
                }
            })
        })
    }

    pub fn complement(&self) -> Hypergraph {
        let total = binom3(self.n);
        let mut bits: Vec<u64> = self.bits.iter().map(|w| !w).collect();
        let tail = total % 64;
        if tail != 0 {
            if let Some(last) = bits.last_mut() {
                *last &= (1u64 << tail) - 1;
            }
        }
        Hypergraph { n: self.n, bits }
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: usize) -> usize {
        self.edges().filter(|t| t.contains(v)).count()
    }

    /// The set of `w` with `{u, v, w}` an edge.
    pub fn codegree_set(&self, u: usize, v: usize) -> VertexSet {
        (0..self.n).filter(|&w| self.contains(u, v, w)).collect()
    }

    /// Graph on the same vertex set with `u ~ w` iff `{u, v, w}` is an edge.
    pub fn link_graph(&self, v: usize) -> Result<Graph> {
        if v >= self.n {
            return Err(param(format!("vertex {v} out of range for n = {}", self.n)));
        }
        let mut g = Graph::empty(self.n)?;
        for t in self.edges().filter(|t| t.contains(v)) {
            let [a, b, c] = t.vertices();
            let (u, w) = match (a == v, b == v) {
                (true, _) => (b, c),
                (_, true) => (a, c),
                _ => (a, b),
            };
            g.add_edge(u, w)?;
        }
        Ok(g)
    }

    /// `[e0, e1, e2, e3]` where `e_i` counts edges meeting `k` in exactly `i` vertices.
    pub fn edge_split_counts(&self, k: VertexSet) -> Result<[usize; 4]> {
        if !k.is_subset(self.vertices()) {
            return Err(param(format!("{k:?} is not a subset of the vertex set")));
        }
        let mut counts = [0; 4];
        for t in self.edges() {
            counts[t.as_set().intersection(k).len()] += 1;
        }
        Ok(counts)
    }

    /// Number of pairs `{a, b}` inside `k` with `{v, a, b}` an edge.
    pub fn degree_in_set(&self, v: usize, k: VertexSet) -> Result<usize> {
        if v >= self.n || !k.is_subset(self.vertices()) {
            return Err(param("vertex or set out of range"));
        }
        if k.contains(v) {
            return Err(param(format!("vertex {v} lies in {k:?}")));
        }
        let ks: Vec<usize> = k.iter().collect();
        let mut d = 0;
        for (i, &a) in ks.iter().enumerate() {
            for &b in &ks[i + 1..] {
                d += self.contains(v, a, b) as usize;
            }
        }
        Ok(d)
    }

    /// Whether no edge lies entirely inside `s`.
    pub fn is_independent(&self, s: VertexSet) -> bool {
        self.edges().all(|t| !t.as_set().is_subset(s))
    }

    /// Applies `perm`, sending old vertex `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Hypergraph> {
        check_permutation(perm, self.n)?;
        let mut h = Hypergraph::empty(self.n)?;
        for t in self.edges() {
            let [a, b, c] = t.vertices();
            let r = rank3(perm[a], perm[b], perm[c]);
            h.bits[r >> 6] |= 1 << (r & 63);
        }
        Ok(h)
    }

    /// The sub-hypergraph induced on `s`, renumbered `0..|s|` in ascending order.
    pub fn induced(&self, s: VertexSet) -> Result<Hypergraph> {
        if !s.is_subset(self.vertices()) {
            return Err(param(format!("{s:?} is not a subset of the vertex set")));
        }
        let mut index = vec![usize::MAX; self.n];
        for (i, v) in s.iter().enumerate() {
            index[v] = i;
        }
        let mut h = Hypergraph::empty(s.len())?;
        for t in self.edges().filter(|t| t.as_set().is_subset(s)) {
            let [a, b, c] = t.vertices();
            h.insert(Triple::new(index[a], index[b], index[c])?)?;
        }
        Ok(h)
    }

    /// `H \ v`: removes `v` and renumbers the vertices above it down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Hypergraph> {
        if v >= self.n {
            return Err(param(format!("vertex {v} out of range for n = {}", self.n)));
        }
        self.induced(self.vertices().without(v))
    }
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

pub(crate) fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(param(format!("permutation has length {} but n = {n}", perm.len())));
    }
    let mut seen = VertexSet::EMPTY;
    for &p in perm {
        if p >= n || seen.contains(p) {
            return Err(param("not a permutation"));
        }
        seen.insert(p);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colex_ranks_are_dense_and_stable() {
        let mut expected = 0;
        for c in 2..10 {
            for b in 1..c {
                for a in 0..b {
                    let t = Triple::new(c, a, b).unwrap();
                    assert_eq!(t.rank(), expected);
                    assert_eq!(Triple::from_rank(expected), t);
                    expected += 1;
                }
            }
        }
        assert_eq!(expected, binom3(10));
    }

    #[test]
    fn complement_of_complete_is_empty() {
        let k6 = Hypergraph::complete(6).unwrap();
        assert_eq!(k6.edge_count(), 20);
        assert_eq!(k6.complement().edge_count(), 0);
        let k20 = Hypergraph::complete(20).unwrap();
        assert_eq!(k20.edge_count(), binom3(20));
        assert_eq!(k20.complement(), Hypergraph::empty(20).unwrap());
    }

    #[test]
    fn link_of_complete_and_empty() {
        let k = Hypergraph::complete(7).unwrap();
        let l = k.link_graph(3).unwrap();
        assert_eq!(l.edge_count(), binom2(6));
        assert!(l.neighbors(3).is_empty());
        let e = Hypergraph::empty(7).unwrap();
        assert_eq!(e.link_graph(0).unwrap().edge_count(), 0);
        assert!(k.link_graph(7).is_err());
    }

    #[test]
    fn split_counts_extremes() {
        let h = Hypergraph::from_edges(6, [[0, 1, 2], [2, 3, 4], [3, 4, 5]]).unwrap();
        assert_eq!(h.edge_split_counts(h.vertices()).unwrap(), [0, 0, 0, 3]);
        assert_eq!(h.edge_split_counts(VertexSet::EMPTY).unwrap(), [3, 0, 0, 0]);
        assert!(h.edge_split_counts(VertexSet::singleton(9)).is_err());
    }

    #[test]
    fn degree_in_set_rejects_member() {
        let k = Hypergraph::complete(6).unwrap();
        let s: VertexSet = [0, 1, 2, 3].into_iter().collect();
        assert_eq!(k.degree_in_set(5, s).unwrap(), 6);
        assert_eq!(Hypergraph::empty(6).unwrap().degree_in_set(5, s).unwrap(), 0);
        assert!(k.degree_in_set(2, s).is_err());
    }

    #[test]
    fn rejects_bad_triples() {
        assert!(Triple::new(1, 1, 2).is_err());
        assert!(Hypergraph::from_edges(4, [[0, 1, 4]]).is_err());
        assert!(Hypergraph::empty(65).is_err());
        assert!(Hypergraph::from_mask(4, 1 << 4).is_err());
    }

    #[test]
    fn delete_vertex_renumbers() {
        let h = Hypergraph::from_edges(5, [[0, 1, 4], [1, 2, 3]]).unwrap();
        let d = h.delete_vertex(0).unwrap();
        assert_eq!(d, Hypergraph::from_edges(4, [[0, 1, 2]]).unwrap());
    }
}
