//! p-multigraphs: a p-tuple of graphs on one vertex set, stored as the set
//! M(x,y) of layers containing each pair.
//!
//! Layers are numbered `1..=p` in the public API and stored as bit `i-1` of a
//! per-pair byte.

mod exact;
mod json;
mod lemmas;

use std::fmt;

use crate::construct::bipartite_classes;
use crate::error::{param, Result};
use crate::graph::{pair_rank, Graph};
use crate::hypergraph::{binom2, MAX_VERTICES};
use crate::vertex_set::VertexSet;

pub use exact::{max_edges_no_crossing, max_edges_no_crossing_with, SearchOptions, SearchOutcome};
pub use json::{MultigraphJson, PairJson};
pub use lemmas::{
    f5_upper_bound_times4, verify_corollary_inequalities, verify_corollary_mutant,
    verify_lemma_4vertex, verify_lemma_4vertex_with, verify_section4_arithmetic,
    verify_section4_mutant, LemmaBounds,
};

/// Most layers a [`PMultigraph`] may carry.
pub const MAX_LAYERS: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PMultigraph {
    p: usize,
    n: usize,
    membership: Vec<u8>,
}

/// Three crossing pairs: `wx, yz` in layer `i`, `wy, xz` in layer `j`,
/// `wz, xy` in layer `k`. Layers are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossingWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub w: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl CrossingWitness {
    pub fn is_valid_in(&self, g: &PMultigraph) -> bool {
        let CrossingWitness { i, j, k, w, x, y, z } = *self;
        let layers = [i, j, k];
        let verts = VertexSet::from_iter([w, x, y, z]);
        let distinct_layers = i != j && j != k && i != k;
        distinct_layers
            && verts.len() == 4
            && layers.iter().all(|&l| (1..=g.p).contains(&l))
            && verts.max().is_some_and(|m| m < g.n)
            && g.in_layer(w, x, i)
            && g.in_layer(y, z, i)
            && g.in_layer(w, y, j)
            && g.in_layer(x, z, j)
            && g.in_layer(w, z, k)
            && g.in_layer(x, y, k)
    }
}

/// Whether layer sets `a`, `b`, `c` admit distinct representatives, i.e. the
/// three perfect matchings of a 4-set with these shared layers cross.
#[inline]
pub fn sets_cross(a: u8, b: u8, c: u8) -> bool {
    // Hall's condition for three sets.
    let ones = |m: u8| m.count_ones();
    a != 0
        && b != 0
        && c != 0
        && ones(a | b) >= 2
        && ones(a | c) >= 2
        && ones(b | c) >= 2
        && ones(a | b | c) >= 3
}

impl PMultigraph {
    pub fn empty(p: usize, n: usize) -> Result<Self> {
        if p == 0 || p > MAX_LAYERS {
            return Err(param(format!("p = {p} outside 1..={MAX_LAYERS}")));
        }
        if n > MAX_VERTICES {
            return Err(param(format!("n = {n} exceeds the cap of {MAX_VERTICES} vertices")));
        }
        Ok(PMultigraph { p, n, membership: vec![0; binom2(n)] })
    }

    /// Builds a multigraph from its layers `G_1, .., G_p` (all on the same `n`).
    pub fn from_layers(layers: &[Graph]) -> Result<Self> {
        let n = layers.first().map_or(0, Graph::n);
        if layers.iter().any(|g| g.n() != n) {
            return Err(param("layers must share one vertex set"));
        }
        let mut g = Self::empty(layers.len(), n)?;
        for (i, layer) in layers.iter().enumerate() {
            for (u, v) in layer.edges() {
                g.add(u, v, i + 1)?;
            }
        }
        Ok(g)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn full_mask(&self) -> u8 {
        ((1u16 << self.p) - 1) as u8
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(param(format!("invalid pair {{{u},{v}}} for n = {}", self.n)));
        }
        Ok(())
    }

    /// `M(u,v)` as a bitmask, bit `i-1` standing for layer `i`.
    pub fn layers(&self, u: usize, v: usize) -> u8 {
        if u == v || u >= self.n || v >= self.n {
            0
        } else {
            self.membership[pair_rank(u, v)]
        }
    }

    /// `M(u,v)` as a list of 1-based layers, ascending.
    pub fn layer_list(&self, u: usize, v: usize) -> Vec<usize> {
        let m = self.layers(u, v);
        (1..=self.p).filter(|i| m >> (i - 1) & 1 == 1).collect()
    }

    pub fn set_layers(&mut self, u: usize, v: usize, mask: u8) -> Result<()> {
        self.check_pair(u, v)?;
        if mask & !self.full_mask() != 0 {
            return Err(param(format!("layer mask {mask:#b} exceeds p = {}", self.p)));
        }
        self.membership[pair_rank(u, v)] = mask;
        Ok(())
    }

    /// Adds the pair `uv` to layer `layer` (1-based).
    pub fn add(&mut self, u: usize, v: usize, layer: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if layer == 0 || layer > self.p {
            return Err(param(format!("layer {layer} outside 1..={}", self.p)));
        }
        self.membership[pair_rank(u, v)] |= 1 << (layer - 1);
        Ok(())
    }

    pub fn in_layer(&self, u: usize, v: usize, layer: usize) -> bool {
        (1..=self.p).contains(&layer) && self.layers(u, v) >> (layer - 1) & 1 == 1
    }

    /// Multiplicity `e(u,v) = |M(u,v)|`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.layers(u, v).count_ones() as usize
    }

    /// Total number of edges over all layers.
    pub fn edge_count(&self) -> usize {
        self.membership.iter().map(|m| m.count_ones() as usize).sum()
    }

    /// Edges (over all layers) inside `s`.
    pub fn edges_within(&self, s: VertexSet) -> usize {
        let vs: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut total = 0;
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                total += self.multiplicity(u, v);
            }
        }
        total
    }

    /// `e+(X)`: edges with at least one end in `x`.
    pub fn e_plus(&self, x: VertexSet) -> usize {
        let rest = VertexSet::full(self.n).difference(x);
        self.edge_count() - self.edges_within(rest)
    }

    /// Layer `i` (1-based) as a graph.
    pub fn layer(&self, i: usize) -> Result<Graph> {
        if i == 0 || i > self.p {
            return Err(param(format!("layer {i} outside 1..={}", self.p)));
        }
        let mut g = Graph::empty(self.n)?;
        for v in 1..self.n {
            for u in 0..v {
                if self.in_layer(u, v, i) {
                    g.add_edge(u, v)?;
                }
            }
        }
        Ok(g)
    }

    /// Nonempty pairs `(u, v, M(u,v))` with `u < v`, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        (0..self.n).flat_map(move |u| {
            (u + 1..self.n).filter_map(move |v| {
                let m = self.layers(u, v);
                (m != 0).then_some((u, v, m))
            })
        })
    }

    /// Vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        crate::hypergraph::check_permutation(perm, self.n)?;
        let mut g = Self::empty(self.p, self.n)?;
        for (u, v, m) in self.pairs() {
            g.set_layers(perm[u], perm[v], m)?;
        }
        Ok(g)
    }

    /// Layer `i` becomes layer `perm[i-1] + 1`; `perm` is a permutation of `0..p`.
    pub fn permute_layers(&self, perm: &[usize]) -> Result<Self> {
        crate::hypergraph::check_permutation(perm, self.p)?;
        let mut g = self.clone();
        for m in g.membership.iter_mut() {
            let old = *m;
            *m = (0..self.p).filter(|&i| old >> i & 1 == 1).fold(0, |acc, i| acc | 1 << perm[i]);
        }
        Ok(g)
    }

    /// The first three crossing pairs in the fixed scan order: 4-sets
    /// `w<x<y<z` lexicographically, then layer triples `(i, j, k)`
    /// lexicographically. `None` when `p < 3` or `n < 4`.
    pub fn has_three_crossing_pairs(&self) -> Option<CrossingWitness> {
        if self.p < 3 || self.n < 4 {
            return None;
        }
        let n = self.n;
        for w in 0..n {
            for x in w + 1..n {
                for y in x + 1..n {
                    for z in y + 1..n {
                        let a = self.layers(w, x) & self.layers(y, z);
                        let b = self.layers(w, y) & self.layers(x, z);
                        let c = self.layers(w, z) & self.layers(x, y);
                        if !sets_cross(a, b, c) {
                            continue;
                        }
                        for i in bits(a) {
                            for j in bits(b & !(1 << i)) {
                                if let Some(k) = bits(c & !(1 << i) & !(1 << j)).next() {
                                    return Some(CrossingWitness {
                                        i: i + 1,
                                        j: j + 1,
                                        k: k + 1,
                                        w,
                                        x,
                                        y,
                                        z,
                                    });
                                }
                            }
                        }
                        unreachable!("Hall's condition guarantees distinct representatives");
                    }
                }
            }
        }
        None
    }
}

fn bits(m: u8) -> impl Iterator<Item = usize> {
    (0..8).filter(move |i| m >> i & 1 == 1)
}

impl fmt::Debug for PMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PMultigraph(p={}, n={}, ", self.p, self.n)?;
        f.debug_list().entries(self.pairs().map(|(u, v, m)| (u, v, self.layer_list_of(m)))).finish()?;
        write!(f, ")")
    }
}

impl PMultigraph {
    fn layer_list_of(&self, m: u8) -> Vec<usize> {
        (1..=self.p).filter(|i| m >> (i - 1) & 1 == 1).collect()
    }
}

/// `2 C(n,2) + 2 floor(n^2/4)`.
pub fn f4_formula(n: u64) -> u64 {
    n * n.saturating_sub(1) + 2 * (n * n / 4)
}

/// Layers 1, 2 carry `X^(2) ∪ K(X,Y)`, layers 3, 4 carry `Y^(2) ∪ K(X,Y)`,
/// with `|X| = floor(n/2)`.
pub fn extremal_4multigraph(n: usize) -> Result<PMultigraph> {
    if n < 4 {
        return Err(param(format!("extremal 4-multigraphs need n >= 4, got {n}")));
    }
    let (x, _) = bipartite_classes(n);
    let mut g = PMultigraph::empty(4, n)?;
    for v in 1..n {
        for u in 0..v {
            let mask = match (x.contains(u), x.contains(v)) {
                (true, true) => 0b0011,
                (false, false) => 0b1100,
                _ => 0b1111,
            };
            g.set_layers(u, v, mask)?;
        }
    }
    Ok(g)
}

/// The two crossing-free 5-multigraphs: every layer equal to the `K_4`-free
/// Turán graph, and the extremal 4-multigraph plus `K(X,Y)` as layer 5.
pub fn f5_lower_constructions(n: usize) -> Result<(PMultigraph, PMultigraph)> {
    if n < 4 {
        return Err(param(format!("the f5 constructions need n >= 4, got {n}")));
    }
    let mut turan = PMultigraph::empty(5, n)?;
    for v in 1..n {
        for u in 0..v {
            // Parts are the residues mod 3, which keeps them near-equal.
            if u % 3 != v % 3 {
                turan.set_layers(u, v, 0b11111)?;
            }
        }
    }
    let mut layered = extremal_4multigraph(n)?;
    layered.p = 5;
    let (x, _) = bipartite_classes(n);
    for v in 1..n {
        for u in 0..v {
            if x.contains(u) != x.contains(v) {
                layered.add(u, v, 5)?;
            }
        }
    }
    Ok((turan, layered))
}

/// `max(5 floor(n^2/3), 2 C(n,2) + 3 floor(n^2/4))`.
pub fn f5_lower_bound(n: u64) -> u64 {
    (5 * (n * n / 3)).max(n * n.saturating_sub(1) + 3 * (n * n / 4))
}
