//! Canonical forms for small hypergraphs.
//!
//! The canonical form is the least edge encoding, read as a big integer over
//! colex ranks, among the relabelings that order vertices by a refined degree
//! invariant. The invariant (degree, then the sorted codegree profile) is
//! preserved by isomorphisms, so isomorphic inputs search the same set of
//! encodings and reach the same minimum.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{capability, Result};
use crate::hypergraph::{binom3, rank3, Hypergraph};

/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANON_VERTICES: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    n: usize,
    words: Vec<u64>,
}

impl CanonicalForm {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn edge_count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// The canonical representative itself.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let mut h = Hypergraph::empty(self.n).expect("n within cap");
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                h.insert(crate::hypergraph::Triple::from_rank(wi * 64 + b)).expect("in range");
            }
        }
        h
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| cmp_encoding(&self.words, &other.words))
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({:?})", self.to_hypergraph())
    }
}

/// Compares equal-length encodings as big integers, most significant word first.
fn cmp_encoding(a: &[u64], b: &[u64]) -> Ordering {
    a.iter().rev().cmp(b.iter().rev())
}

pub fn canonical_form(h: &Hypergraph) -> Result<CanonicalForm> {
    Ok(Canonizer::new(h)?.run(None).0)
}

/// Whether `h` is already its own canonical representative.
pub fn is_canonical(h: &Hypergraph) -> Result<bool> {
    let (form, beaten) = Canonizer::new(h)?.run(Some(h.words()));
    Ok(!beaten && form.words == h.words())
}

pub fn is_isomorphic(a: &Hypergraph, b: &Hypergraph) -> Result<bool> {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

struct Canonizer {
    n: usize,
    edges: Vec<[usize; 3]>,
    /// Vertices grouped into invariant classes, classes in canonical order.
    classes: Vec<Vec<usize>>,
    /// Search the complement and maximise, which is equivalent and cheaper
    /// once more than half of the triples are edges.
    flipped: bool,
}

impl Canonizer {
    fn new(h: &Hypergraph) -> Result<Self> {
        let n = h.n();
        if n > MAX_CANON_VERTICES {
            return Err(capability(format!(
                "canonical forms are limited to n <= {MAX_CANON_VERTICES}, got {n}"
            )));
        }
        let flipped = 2 * h.edge_count() > binom3(n);
        let work = if flipped { h.complement() } else { h.clone() };
        let edges: Vec<[usize; 3]> = work.edges().map(|t| t.vertices()).collect();

        let mut keys: Vec<(Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let deg = edges.iter().filter(|e| e.contains(&v)).count();
                let mut codeg: Vec<usize> = (0..n)
                    .filter(|&u| u != v)
                    .map(|u| edges.iter().filter(|e| e.contains(&u) && e.contains(&v)).count())
                    .collect();
                codeg.sort_unstable();
                let mut key = vec![deg];
                key.extend(codeg);
                (key, v)
            })
            .collect();
        // Busiest vertices first: they receive the smallest labels.
        keys.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, (key, v)) in keys.iter().enumerate() {
            if i > 0 && keys[i - 1].0 == *key {
                classes.last_mut().expect("nonempty").push(*v);
            } else {
                classes.push(vec![*v]);
            }
        }
        Ok(Canonizer { n, edges, classes, flipped })
    }

    /// Returns the canonical form and whether some relabeling beats `bound`.
    /// With a bound the search stops at the first relabeling that beats it.
    fn run(&self, bound: Option<&[u64]>) -> (CanonicalForm, bool) {
        let words = binom3(self.n).div_ceil(64);
        let bound: Option<Vec<u64>> = bound.map(|b| {
            if self.flipped {
                complement_words(b, self.n)
            } else {
                b.to_vec()
            }
        });
        let mut best: Option<Vec<u64>> = None;
        let mut perm = vec![usize::MAX; self.n];
        let mut scratch = vec![0u64; words];
        let mut beaten = false;
        self.assign(0, 0, &mut perm, &mut |perm: &[usize]| {
            scratch.iter_mut().for_each(|w| *w = 0);
            for &[a, b, c] in &self.edges {
                let r = rank3(perm[a], perm[b], perm[c]);
                scratch[r >> 6] |= 1 << (r & 63);
            }
            let better = |cand: &[u64], cur: &[u64]| {
                let ord = cmp_encoding(cand, cur);
                if self.flipped {
                    ord == Ordering::Greater
                } else {
                    ord == Ordering::Less
                }
            };
            if let Some(b) = &bound {
                if better(&scratch, b) {
                    beaten = true;
                    return false;
                }
            }
            match &mut best {
                Some(cur) if !better(&scratch, cur) => {}
                slot => *slot = Some(scratch.clone()),
            }
            true
        });
        let mut words = best.unwrap_or_else(|| vec![0; words]);
        if self.flipped {
            words = complement_words(&words, self.n);
        }
        (CanonicalForm { n: self.n, words }, beaten)
    }

    /// Assigns new labels class by class; the callback returns `false` to stop.
    fn assign<F: FnMut(&[usize]) -> bool>(
        &self,
        class: usize,
        label: usize,
        perm: &mut Vec<usize>,
        visit: &mut F,
    ) -> bool {
        if class == self.classes.len() {
            return visit(perm);
        }
        let members = &self.classes[class];
        // Every bijection from this class onto labels label..label+len.
        let mut keep_going = true;
        crate::permutation::for_each_permutation(members.len(), |p| {
            if !keep_going {
                return;
            }
            for (i, &pi) in p.iter().enumerate() {
                perm[members[pi]] = label + i;
            }
            keep_going = self.assign(class + 1, label + members.len(), perm, visit);
        });
        keep_going
    }
}

fn complement_words(words: &[u64], n: usize) -> Vec<u64> {
    let total = binom3(n);
    let mut out: Vec<u64> = words.iter().map(|w| !w).collect();
    if total % 64 != 0 {
        if let Some(last) = out.last_mut() {
            *last &= (1u64 << (total % 64)) - 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct, Family};
    use crate::permutation::for_each_permutation;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Hypergraph {
        let mut h = Hypergraph::empty(n).unwrap();
        for r in 0..binom3(n) {
            if rng.gen_bool(p) {
                h.insert(crate::hypergraph::Triple::from_rank(r)).unwrap();
            }
        }
        h
    }

    #[test]
    fn invariant_under_random_relabeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut tests: Vec<Hypergraph> = vec![
            construct(Family::BalancedBipartite, 7).unwrap(),
            construct(Family::J7, 7).unwrap(),
            construct(Family::Fano, 7).unwrap(),
            construct(Family::Pasch, 6).unwrap(),
        ];
        for n in [5, 6, 7, 8] {
            for p in [0.2, 0.5, 0.8] {
                tests.push(random_hypergraph(&mut rng, n, p));
            }
        }
        for h in &tests {
            let c = canonical_form(h).unwrap();
            let mut perm: Vec<usize> = (0..h.n()).collect();
            for _ in 0..100 {
                perm.shuffle(&mut rng);
                assert_eq!(canonical_form(&h.relabel(&perm).unwrap()).unwrap(), c);
            }
            assert!(is_isomorphic(&c.to_hypergraph(), h).unwrap());
        }
    }

    #[test]
    fn separates_b7_from_j7() {
        let b7 = construct(Family::BalancedBipartite, 7).unwrap();
        let j7 = construct(Family::J7, 7).unwrap();
        assert_ne!(canonical_form(&b7).unwrap(), canonical_form(&j7).unwrap());
        // Oracle: no bijection maps the edges of B_7 onto those of J_7.
        let mut any = false;
        for_each_permutation(7, |p| {
            any |= b7.relabel(p).unwrap() == j7;
        });
        assert!(!any);
    }

    #[test]
    fn fano_has_thirty_labelings() {
        let fano = construct(Family::Fano, 7).unwrap();
        let mut seen = HashSet::new();
        for_each_permutation(7, |p| {
            seen.insert(fano.relabel(p).unwrap());
        });
        assert_eq!(seen.len(), 30);
        let c = canonical_form(&fano).unwrap();
        assert!(seen.iter().all(|h| canonical_form(h).unwrap() == c));
        assert_eq!(seen.iter().filter(|h| is_canonical(h).unwrap()).count(), 1);
    }

    #[test]
    fn exactly_one_canonical_labeling_per_orbit() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let h = random_hypergraph(&mut rng, 6, 0.4);
            let mut orbit = HashSet::new();
            for_each_permutation(6, |p| {
                orbit.insert(h.relabel(p).unwrap());
            });
            let canon: Vec<_> = orbit.iter().filter(|g| is_canonical(g).unwrap()).collect();
            assert_eq!(canon.len(), 1);
            assert_eq!(*canon[0], canonical_form(&h).unwrap().to_hypergraph());
        }
    }

    #[test]
    fn over_cap_is_capability_error() {
        let h = Hypergraph::empty(13).unwrap();
        assert!(matches!(canonical_form(&h), Err(crate::Error::Capability(_))));
    }
}
