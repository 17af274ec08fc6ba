//! Named hypergraphs, the edge-count formula of the bipartite construction,
//! and a recognizer for it.

use std::fmt;
use std::str::FromStr;

use crate::error::{param, Error, Result};
use crate::hypergraph::{binom3, Hypergraph, Triple};
use crate::permutation::for_each_subset;
use crate::vertex_set::VertexSet;

/// Lines of the Fano plane on points `0..7`.
///
/// Shifted down by one from the 1-indexed list
/// `123, 345, 156, 147, 367, 257, 246`; every pair of points lies on exactly
/// one line.
pub const FANO_LINES: [[usize; 3]; 7] =
    [[0, 1, 2], [2, 3, 4], [0, 4, 5], [0, 3, 6], [2, 5, 6], [1, 4, 6], [1, 3, 5]];

/// The Pasch configuration on `0..6`, 1-indexed `135, 146, 236, 245`.
/// Its parts are the pairs `{0,1}`, `{2,3}`, `{4,5}`.
pub const PASCH_EDGES: [[usize; 3]; 4] = [[0, 2, 4], [0, 3, 5], [1, 2, 5], [1, 3, 4]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Complete,
    BalancedBipartite,
    J7,
    Fano,
    Pasch,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Complete, Family::BalancedBipartite, Family::J7, Family::Fano, Family::Pasch];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::BalancedBipartite => "balanced_bipartite",
            Family::J7 => "j7",
            Family::Fano => "fano",
            Family::Pasch => "pasch",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| param(format!("unknown family `{s}`")))
    }
}

pub fn construct(family: Family, n: usize) -> Result<Hypergraph> {
    match family {
        Family::Complete => Hypergraph::complete(n),
        Family::BalancedBipartite => {
            if n < 2 {
                return Err(param("balanced_bipartite needs n >= 2"));
            }
            balanced_bipartite(n)
        }
        Family::J7 => {
            require_n(family, n, 7)?;
            // K_7 minus the five triples through the pair {0, 1}.
            let mut h = Hypergraph::complete(7)?;
            for w in 2..7 {
                h.remove(Triple::new(0, 1, w)?);
            }
            Ok(h)
        }
        Family::Fano => {
            require_n(family, n, 7)?;
            Hypergraph::from_edges(7, FANO_LINES)
        }
        Family::Pasch => {
            require_n(family, n, 6)?;
            Hypergraph::from_edges(6, PASCH_EDGES)
        }
    }
}

fn require_n(family: Family, n: usize, want: usize) -> Result<()> {
    if n == want {
        Ok(())
    } else {
        Err(param(format!("{family} is only defined for n = {want}, got {n}")))
    }
}

/// The classes used by [`construct`]: `X = {0..floor(n/2))`, `Y` the rest.
pub fn bipartite_classes(n: usize) -> (VertexSet, VertexSet) {
    let x = VertexSet::full(n / 2);
    (x, VertexSet::full(n).difference(x))
}

fn balanced_bipartite(n: usize) -> Result<Hypergraph> {
    let (x, _) = bipartite_classes(n);
    let mut h = Hypergraph::complete(n)?;
    let crossing: Vec<Triple> = h
        .edges()
        .filter(|t| {
            let inside = t.as_set().intersection(x).len();
            inside == 0 || inside == 3
        })
        .collect();
    for t in crossing {
        h.remove(t);
    }
    Ok(h)
}

/// Edge count of the balanced complete bipartite hypergraph,
/// `((n-2)/2) * floor(n^2/4)`, evaluated exactly. Zero for `n < 2`.
pub fn b_formula(n: u64) -> u64 {
    if n < 2 {
        return 0;
    }
    // (n-2) * floor(n^2/4) is always even.
    (n - 2) * (n * n / 4) / 2
}

/// The same count as `C(n,3) - C(floor(n/2),3) - C(floor((n+1)/2),3)`.
pub fn b_binomial(n: u64) -> u64 {
    let c3 = |m: u64| if m < 3 { 0 } else { m * (m - 1) * (m - 2) / 6 };
    c3(n) - c3(n / 2) - c3(n.div_ceil(2))
}

/// If `h` is a balanced complete bipartite hypergraph, returns its classes
/// `(X, Y)` with `|X| <= |Y|`, and `0 ∈ X` when the sizes are equal.
pub fn recognize_balanced_bipartite(h: &Hypergraph) -> Option<(VertexSet, VertexSet)> {
    let n = h.n();
    if h.edge_count() as u64 != b_formula(n as u64) {
        return None;
    }
    let all = h.vertices();
    let found = if n >= 6 {
        // Both classes have at least 3 vertices, so the non-edges are exactly the
        // triples inside a class and their shadows are the two classes.
        let comps = nonedge_components(h);
        if comps.len() != 2 {
            return None;
        }
        Some((comps[0], comps[1]))
    } else {
        let mut hit = None;
        for_each_subset(n, n / 2, |xs| {
            if hit.is_none() {
                let x: VertexSet = xs.iter().copied().collect();
                if is_bipartite_with(h, x, all.difference(x)) {
                    hit = Some((x, all.difference(x)));
                }
            }
        });
        hit
    };
    let (x, y) = found?;
    if x.len().abs_diff(y.len()) > 1 || !is_bipartite_with(h, x, y) {
        return None;
    }
    Some(normalize(x, y))
}

fn normalize(x: VertexSet, y: VertexSet) -> (VertexSet, VertexSet) {
    if x.len() < y.len() || (x.len() == y.len() && x.contains(0)) {
        (x, y)
    } else {
        (y, x)
    }
}

fn is_bipartite_with(h: &Hypergraph, x: VertexSet, y: VertexSet) -> bool {
    let n = h.n();
    let mut ok = true;
    for_each_subset(n, 3, |t| {
        if ok {
            let s: VertexSet = t.iter().copied().collect();
            let crossing = !s.intersection(x).is_empty() && !s.intersection(y).is_empty();
            ok = h.contains(t[0], t[1], t[2]) == crossing;
        }
    });
    ok
}

/// Connected components of the graph joining two vertices when a non-edge
/// contains both. Vertices in no non-edge are singleton components.
fn nonedge_components(h: &Hypergraph) -> Vec<VertexSet> {
    let n = h.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            p[v] = p[p[v]];
            v = p[v];
        }
        v
    }
    for t in h.complement().edges() {
        let [a, b, c] = t.vertices();
        for (u, w) in [(a, b), (b, c)] {
            let (ru, rw) = (find(&mut parent, u), find(&mut parent, w));
            parent[ru] = rw;
        }
    }
    let mut comps: Vec<VertexSet> = Vec::new();
    let mut root_of = vec![usize::MAX; n];
    for v in 0..n {
        let r = find(&mut parent, v);
        if root_of[r] == usize::MAX {
            root_of[r] = comps.len();
            comps.push(VertexSet::EMPTY);
        }
        comps[root_of[r]].insert(v);
    }
    comps
}

/// All independent vertex sets of the given size, in lexicographic order.
pub fn independent_sets(h: &Hypergraph, size: usize) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_subset(h.n(), size, |s| {
        let set: VertexSet = s.iter().copied().collect();
        if h.is_independent(set) {
            out.push(set);
        }
    });
    out
}

/// Number of non-edges of an `n`-vertex hypergraph with `b(n)` edges.
pub fn complement_size_at_b(n: usize) -> usize {
    binom3(n) - b_formula(n as u64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_edge_counts() {
        assert_eq!(construct(Family::BalancedBipartite, 7).unwrap().edge_count(), 30);
        assert_eq!(construct(Family::J7, 7).unwrap().edge_count(), 30);
        assert_eq!(construct(Family::Complete, 5).unwrap().edge_count(), 10);
        let fano = construct(Family::Fano, 7).unwrap();
        assert_eq!(fano.edge_count(), 7);
        assert!((0..7).all(|v| fano.degree(v) == 3));
        assert_eq!(construct(Family::Pasch, 6).unwrap().edge_count(), 4);
    }

    #[test]
    fn fano_lines_form_a_projective_plane() {
        let fano = construct(Family::Fano, 7).unwrap();
        for a in 0..7 {
            for b in a + 1..7 {
                assert_eq!(fano.codegree_set(a, b).len(), 1, "pair {a}{b}");
            }
        }
    }

    #[test]
    fn wrong_n_is_a_parameter_error() {
        assert!(matches!(construct(Family::J7, 8), Err(Error::Parameter(_))));
        assert!(construct(Family::Fano, 6).is_err());
        assert!(construct(Family::Pasch, 7).is_err());
        assert!(construct(Family::BalancedBipartite, 1).is_err());
        assert!(construct(Family::Complete, 65).is_err());
        assert!("petersen".parse::<Family>().is_err());
        assert_eq!("j7".parse::<Family>().unwrap(), Family::J7);
    }

    #[test]
    fn b_formula_values() {
        assert_eq!(b_formula(7), 30);
        assert_eq!(b_formula(8), 48);
        assert_eq!(b_formula(5), 9);
        // Direct edge count of the construction.
        assert_eq!(construct(Family::BalancedBipartite, 9).unwrap().edge_count(), 70);
        assert_eq!(b_formula(9), 70);
    }

    #[test]
    fn b_closed_forms_agree() {
        for n in 2..=2000u64 {
            assert_eq!(b_formula(n), b_binomial(n), "n = {n}");
        }
    }

    #[test]
    fn recognizes_b10_with_its_partition() {
        let b10 = construct(Family::BalancedBipartite, 10).unwrap();
        let (x, y) = recognize_balanced_bipartite(&b10).unwrap();
        assert_eq!((x, y), bipartite_classes(10));
    }

    #[test]
    fn rejects_j7() {
        let j7 = construct(Family::J7, 7).unwrap();
        assert_eq!(recognize_balanced_bipartite(&j7), None);
        // Oracle: every split of the 7 vertices, 2^6 up to swapping the classes.
        for mask in 0u64..64 {
            let x = VertexSet(mask | 1 << 6);
            let y = VertexSet::full(7).difference(x);
            assert!(!is_bipartite_with(&j7, x, y) || x.len().abs_diff(y.len()) > 1);
        }
    }

    #[test]
    fn unique_large_independent_set_in_odd_b() {
        // B_{n-1} for even n has a unique independent set of size n/2.
        for n in [6usize, 8, 10] {
            let b = construct(Family::BalancedBipartite, n - 1).unwrap();
            assert_eq!(independent_sets(&b, n / 2).len(), 1, "n = {n}");
        }
        // With equal classes both are independent.
        let b6 = construct(Family::BalancedBipartite, 6).unwrap();
        assert_eq!(independent_sets(&b6, 3).len(), 2);
    }
}
