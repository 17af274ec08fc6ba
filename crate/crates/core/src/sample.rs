//! Seeded random instances for property tests and agreement checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{param, Result};
use crate::hypergraph::{binom3, Hypergraph, Triple};

/// The generator used everywhere a seed is recorded.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each triple is present independently with probability `density`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, density: f64) -> Result<Hypergraph> {
    if !(0.0..=1.0).contains(&density) {
        return Err(param(format!("density {density} outside [0, 1]")));
    }
    let mut h = Hypergraph::empty(n)?;
    for r in 0..binom3(n) {
        if rng.gen_bool(density) {
            h.insert(Triple::from_rank(r))?;
        }
    }
    Ok(h)
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
