//! Clique and Fano-plane containment.
//!
//! Three independent Fano detectors are provided. They share nothing but the
//! hypergraph type and `link_graph`, so agreement between them is meaningful:
//!
//! * [`find_fano_embedding`] places the seven points one at a time and
//!   intersects codegree sets to forward-check every line that closes;
//! * [`find_fano_crossing`] fixes one edge `xyz` and looks for four more
//!   vertices whose three perfect matchings sit in the links of `x`, `y`, `z`;
//! * [`find_fano_pasch`] fixes a vertex `v`, a perfect matching of six further
//!   vertices in its link, and a Pasch configuration across the matching.
//!
//! Each returns the first witness in its own fixed scan order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::construct::FANO_LINES;
use crate::error::{param, Error, Result};
use crate::graph::Graph;
use crate::hypergraph::{rank3, Hypergraph};
use crate::permutation::{for_each_permutation, for_each_subset};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetectionMethod {
    Embedding,
    CrossingPairs,
    PaschMatching,
}

impl DetectionMethod {
    pub const ALL: [DetectionMethod; 3] =
        [DetectionMethod::Embedding, DetectionMethod::CrossingPairs, DetectionMethod::PaschMatching];

    pub fn name(self) -> &'static str {
        match self {
            DetectionMethod::Embedding => "embedding",
            DetectionMethod::CrossingPairs => "crossing",
            DetectionMethod::PaschMatching => "pasch",
        }
    }
}

impl fmt::Display for DetectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetectionMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "embedding" => Ok(DetectionMethod::Embedding),
            "crossing" | "crossing_pairs" => Ok(DetectionMethod::CrossingPairs),
            "pasch" | "pasch_matching" => Ok(DetectionMethod::PaschMatching),
            _ => Err(param(format!("unknown detection method `{s}`"))),
        }
    }
}

/// An injection of the Fano points `0..7` into the vertex set: point `i` goes
/// to vertex `self.0[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanoEmbedding(pub [usize; 7]);

impl FanoEmbedding {
    /// Whether the map is injective and carries every line onto an edge of `h`.
    pub fn is_valid_in(&self, h: &Hypergraph) -> bool {
        let image: VertexSet = self.0.iter().copied().filter(|&v| v < 64).collect();
        image.len() == 7
            && self.0.iter().all(|&v| v < h.n())
            && FANO_LINES.iter().all(|&[a, b, c]| h.contains(self.0[a], self.0[b], self.0[c]))
    }

    /// The image of the seven lines as triples.
    pub fn lines(&self) -> [[usize; 3]; 7] {
        FANO_LINES.map(|[a, b, c]| [self.0[a], self.0[b], self.0[c]])
    }
}

pub fn find_fano(h: &Hypergraph, method: DetectionMethod) -> Option<FanoEmbedding> {
    match method {
        DetectionMethod::Embedding => find_fano_embedding(h),
        DetectionMethod::CrossingPairs => find_fano_crossing(h),
        DetectionMethod::PaschMatching => find_fano_pasch(h),
    }
}

pub fn contains_fano(h: &Hypergraph, method: DetectionMethod) -> bool {
    find_fano(h, method).is_some()
}

pub fn contains_fano_embedding(h: &Hypergraph) -> bool {
    find_fano_embedding(h).is_some()
}

pub fn contains_fano_crossing(h: &Hypergraph) -> bool {
    find_fano_crossing(h).is_some()
}

pub fn contains_fano_pasch(h: &Hypergraph) -> bool {
    find_fano_pasch(h).is_some()
}

/// `codeg[u * n + v]` holds every `w` with `{u, v, w}` an edge.
struct CodegreeTable {
    n: usize,
    sets: Vec<u64>,
}

impl CodegreeTable {
    fn new(h: &Hypergraph) -> Self {
        let n = h.n();
        let mut sets = vec![0u64; n * n];
        for t in h.edges() {
            let [a, b, c] = t.vertices();
            for (x, y, z) in [(a, b, c), (a, c, b), (b, c, a)] {
                sets[x * n + y] |= 1 << z;
                sets[y * n + x] |= 1 << z;
            }
        }
        CodegreeTable { n, sets }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> u64 {
        self.sets[u * self.n + v]
    }
}

/// Placement order and, per step, the lines that close when the point is placed.
struct EmbeddingPlan {
    order: [usize; 7],
    /// For step `i`: pairs of already-placed points completing a line with `order[i]`.
    closing: [Vec<(usize, usize)>; 7],
}

fn embedding_plan() -> &'static EmbeddingPlan {
    static PLAN: std::sync::OnceLock<EmbeddingPlan> = std::sync::OnceLock::new();
    PLAN.get_or_init(|| {
        let mut placed = [false; 7];
        let mut order = [0; 7];
        let mut closing: [Vec<(usize, usize)>; 7] = Default::default();
        for step in 0..7 {
            // Most constrained point next: the one closing the most lines.
            let closes = |p: usize, placed: &[bool; 7]| -> Vec<(usize, usize)> {
                FANO_LINES
                    .iter()
                    .filter(|l| l.contains(&p))
                    .filter_map(|l| {
                        let others: Vec<usize> = l.iter().copied().filter(|&q| q != p).collect();
                        (placed[others[0]] && placed[others[1]]).then(|| (others[0], others[1]))
                    })
                    .collect()
            };
            let next = (0..7)
                .filter(|&p| !placed[p])
                .max_by_key(|&p| (closes(p, &placed).len(), std::cmp::Reverse(p)))
                .expect("unplaced point");
            closing[step] = closes(next, &placed);
            order[step] = next;
            placed[next] = true;
        }
        EmbeddingPlan { order, closing }
    })
}

/// Backtracking embedding search with forward checking on closing lines.
pub fn find_fano_embedding(h: &Hypergraph) -> Option<FanoEmbedding> {
    if h.n() < 7 || h.edge_count() < 7 {
        return None;
    }
    let table = CodegreeTable::new(h);
    let plan = embedding_plan();
    let mut phi = [usize::MAX; 7];
    embed_step(&table, plan, 0, VertexSet::EMPTY, &mut phi).then_some(FanoEmbedding(phi))
}

fn embed_step(
    table: &CodegreeTable,
    plan: &EmbeddingPlan,
    step: usize,
    used: VertexSet,
    phi: &mut [usize; 7],
) -> bool {
    if step == 7 {
        return true;
    }
    let mut cand = VertexSet::full(table.n).difference(used).0;
    for &(a, b) in &plan.closing[step] {
        cand &= table.get(phi[a], phi[b]);
    }
    let point = plan.order[step];
    for v in VertexSet(cand).iter() {
        phi[point] = v;
        if embed_step(table, plan, step + 1, used.with(v), phi) {
            return true;
        }
    }
    phi[point] = usize::MAX;
    false
}

/// Searches an edge `xyz` plus four vertices whose three perfect matchings are
/// covered, one each, by the link graphs of `x`, `y` and `z`.
pub fn find_fano_crossing(h: &Hypergraph) -> Option<FanoEmbedding> {
    let n = h.n();
    if n < 7 {
        return None;
    }
    let links: Vec<Graph> = (0..n).map(|v| h.link_graph(v).expect("v < n")).collect();
    for e in h.edges() {
        let xyz = e.vertices();
        let rest: Vec<usize> =
            (0..n).filter(|v| !xyz.contains(v)).collect();
        let mut found = None;
        for_each_subset(rest.len(), 4, |idx| {
            if found.is_some() {
                return;
            }
            let [p, q, r, s] = [rest[idx[0]], rest[idx[1]], rest[idx[2]], rest[idx[3]]];
            // The three perfect matchings of {p, q, r, s}.
            let matchings = [[(p, q), (r, s)], [(p, r), (q, s)], [(p, s), (q, r)]];
            let inside = |v: usize, m: usize| {
                let [(a, b), (c, d)] = matchings[m];
                links[v].has_edge(a, b) && links[v].has_edge(c, d)
            };
            for_each_permutation(3, |sigma| {
                if found.is_some() {
                    return;
                }
                if (0..3).all(|i| inside(xyz[i], sigma[i])) {
                    // Points 0,1,2 are x,y,z. Point 3 is p; its partners in the
                    // matchings of points 0, 1, 2 are points 6, 5, 4.
                    let partner = |m: usize| {
                        let [(a, b), (c, d)] = matchings[m];
                        [(a, b), (b, a), (c, d), (d, c)]
                            .into_iter()
                            .find(|&(u, _)| u == p)
                            .map(|(_, w)| w)
                            .expect("p is matched")
                    };
                    found = Some(FanoEmbedding([
                        xyz[0],
                        xyz[1],
                        xyz[2],
                        p,
                        partner(sigma[2]),
                        partner(sigma[1]),
                        partner(sigma[0]),
                    ]));
                }
            });
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Searches a vertex `v`, a perfect matching `a1a2, b1b2, c1c2` in its link,
/// and a Pasch configuration with one vertex from each matching edge.
pub fn find_fano_pasch(h: &Hypergraph) -> Option<FanoEmbedding> {
    if h.n() < 7 {
        return None;
    }
    (0..h.n()).find_map(|v| find_fano_pasch_at(h, v))
}

/// The Pasch search with the vertex `v` fixed.
pub fn find_fano_pasch_at(h: &Hypergraph, v: usize) -> Option<FanoEmbedding> {
    if h.n() < 7 || v >= h.n() {
        return None;
    }
    let link = h.link_graph(v).ok()?;
    let edges: Vec<(usize, usize)> = link.edges().collect();
    for (i, &(a1, a2)) in edges.iter().enumerate() {
        for (j, &(b1, b2)) in edges.iter().enumerate().skip(i + 1) {
            if b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2 {
                continue;
            }
            for &(c1, c2) in &edges[j + 1..] {
                if [a1, a2, b1, b2].contains(&c1) || [a1, a2, b1, b2].contains(&c2) {
                    continue;
                }
                // Triples taking one vertex per pair with an odd number of
                // second coordinates, then the even class.
                let odd = [(a2, b2, c2), (a2, b1, c1), (a1, b2, c1), (a1, b1, c2)];
                let even = [(a1, b1, c1), (a1, b2, c2), (a2, b1, c2), (a2, b2, c1)];
                let all = |ts: &[(usize, usize, usize); 4]| {
                    ts.iter().all(|&(x, y, z)| h.contains(x, y, z))
                };
                if all(&odd) {
                    return Some(FanoEmbedding([v, a1, a2, c1, b1, b2, c2]));
                }
                if all(&even) {
                    return Some(FanoEmbedding([v, a2, a1, c1, b1, b2, c2]));
                }
            }
        }
    }
    None
}

/// First `k`-subset (lexicographic) spanning a complete `k`-vertex sub-hypergraph.
pub fn find_clique(h: &Hypergraph, k: usize) -> Option<VertexSet> {
    if k > h.n() {
        return None;
    }
    if k < 3 {
        return Some(VertexSet::full(k));
    }
    let table = CodegreeTable::new(h);
    let mut chosen = Vec::with_capacity(k);
    clique_step(&table, k, VertexSet::full(h.n()).0, &mut chosen)
        .then(|| chosen.iter().copied().collect())
}

fn clique_step(table: &CodegreeTable, k: usize, cand: u64, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == k {
        return true;
    }
    for w in VertexSet(cand).iter() {
        // Later vertices must close a triple with `w` and every chosen vertex.
        let mut next = cand & VertexSet::above(w).0;
        if (next.count_ones() as usize) + chosen.len() + 1 < k {
            return false;
        }
        for &u in chosen.iter() {
            next &= table.get(u, w);
        }
        chosen.push(w);
        if clique_step(table, k, next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

pub fn contains_clique(h: &Hypergraph, k: usize) -> bool {
    find_clique(h, k).is_some()
}

/// Every labeled Fano copy inside `K_n^(3)` for `7 <= n <= 8`, as rank masks.
///
/// The primal contains a Fano plane iff some copy avoids the complement,
/// which turns containment into a handful of word operations in hot loops.
#[derive(Clone, Debug)]
pub struct FanoCopies {
    n: usize,
    masks: Vec<u64>,
}

impl FanoCopies {
    pub fn new(n: usize) -> Result<Self> {
        if n > 8 {
            return Err(crate::error::capability("Fano copy tables need n <= 8"));
        }
        let mut masks = Vec::new();
        for_each_subset(n, 7, |s| {
            for_each_permutation(7, |p| {
                let m = FANO_LINES
                    .iter()
                    .fold(0u64, |m, &[a, b, c]| m | 1 << rank3(s[p[a]], s[p[b]], s[p[c]]));
                masks.push(m);
            });
        });
        masks.sort_unstable();
        masks.dedup();
        Ok(FanoCopies { n, masks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Whether the hypergraph whose non-edges are `complement` contains a Fano plane.
    #[inline]
    pub fn primal_contains(&self, complement: u64) -> bool {
        self.masks.iter().any(|&m| m & complement == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, Family};
    use crate::hypergraph::{binom3, Triple};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn named_inputs_all_methods() {
        let fano = construct(Family::Fano, 7).unwrap();
        let k7 = construct(Family::Complete, 7).unwrap();
        let j7 = construct(Family::J7, 7).unwrap();
        for m in DetectionMethod::ALL {
            assert!(contains_fano(&fano, m), "{m}");
            assert!(contains_fano(&k7, m), "{m}");
            assert!(!contains_fano(&j7, m), "{m}");
            for n in 7..=12 {
                let b = construct(Family::BalancedBipartite, n).unwrap();
                assert!(!contains_fano(&b, m), "{m} B_{n}");
            }
        }
        assert_eq!(find_fano_embedding(&fano), Some(FanoEmbedding([0, 1, 2, 3, 4, 5, 6])));
    }

    #[test]
    fn pasch_from_every_vertex_of_fano() {
        let fano = construct(Family::Fano, 7).unwrap();
        for v in 0..7 {
            let w = find_fano_pasch_at(&fano, v).expect("pasch witness");
            assert_eq!(w.0[0], v);
            assert!(w.is_valid_in(&fano));
        }
    }

    #[test]
    fn crossing_on_minimal_configuration() {
        // Edge {0,1,2} and one matching of {3,4,5,6} in each link, crossing.
        let h = Hypergraph::from_edges(
            7,
            [[0, 1, 2], [0, 3, 4], [0, 5, 6], [1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]],
        )
        .unwrap();
        let w = find_fano_crossing(&h).unwrap();
        assert!(w.is_valid_in(&h));
        assert_eq!(&w.0[..3], &[0, 1, 2]);
    }

    #[test]
    fn witnesses_are_sound_on_random_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(7..=9);
            let p = rng.gen_range(0.3..0.9);
            let mut h = Hypergraph::empty(n).unwrap();
            for r in 0..binom3(n) {
                if rng.gen_bool(p) {
                    h.insert(Triple::from_rank(r)).unwrap();
                }
            }
            let found: Vec<_> = DetectionMethod::ALL.iter().map(|&m| find_fano(&h, m)).collect();
            for w in found.iter().flatten() {
                assert!(w.is_valid_in(&h));
            }
            assert!(found.iter().all(|w| w.is_some() == found[0].is_some()));
        }
    }

    #[test]
    fn cliques() {
        let j7 = construct(Family::J7, 7).unwrap();
        let w = find_clique(&j7, 6).unwrap();
        assert_eq!(w.len(), 6);
        assert!(contains_clique(&construct(Family::BalancedBipartite, 4).unwrap(), 4));
        for n in 4..=10 {
            let b = construct(Family::BalancedBipartite, n).unwrap();
            assert!(contains_clique(&b, 4));
            assert!(!contains_clique(&b, 5), "B_{n}");
        }
        assert!(!contains_clique(&Hypergraph::complete(4).unwrap(), 5));
        let k6 = Hypergraph::complete(6).unwrap();
        assert_eq!(find_clique(&k6, 6), Some(VertexSet::full(6)));
    }

    #[test]
    fn five_cliques_in_b10_oracle() {
        // Every 5-set has three vertices in one class; that triple is missing.
        let b = construct(Family::BalancedBipartite, 10).unwrap();
        for_each_subset(10, 5, |s| {
            let all = (0..5).all(|i| {
                (i + 1..5).all(|j| (j + 1..5).all(|k| b.contains(s[i], s[j], s[k])))
            });
            assert!(!all);
        });
    }

    #[test]
    fn copy_tables() {
        assert_eq!(FanoCopies::new(7).unwrap().len(), 30);
        assert_eq!(FanoCopies::new(8).unwrap().len(), 240);
        assert!(FanoCopies::new(6).unwrap().is_empty());
        assert!(FanoCopies::new(9).is_err());
    }
}
