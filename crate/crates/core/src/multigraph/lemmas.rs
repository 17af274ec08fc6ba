//! Finite checks of the 4-vertex lemma and of the integer inequalities that
//! the induction relies on.

use super::{f4_formula, sets_cross, PMultigraph};
use crate::construct::b_formula;
use crate::error::{param, Result};
use crate::hypergraph::binom2;
use crate::search::{Certificate, Recorder, Witness};

/// The statement checked by [`verify_lemma_4vertex_with`]. For a crossing-free
/// 5-multigraph on four vertices with `e` edges:
/// (i) `e >= part_i_threshold` implies some pair of disjoint pairs has
/// multiplicity sum `<= part_i_bound`;
/// (ii) `e >= part_ii_threshold` implies some pair has multiplicity 5.
/// States with `e < min_total` are skipped and accounted as pruned.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaBounds {
    pub part_i_threshold: usize,
    pub part_i_bound: usize,
    pub part_ii_threshold: usize,
    pub min_total: usize,
}

impl Default for LemmaBounds {
    fn default() -> Self {
        LemmaBounds { part_i_threshold: 23, part_i_bound: 5, part_ii_threshold: 22, min_total: 0 }
    }
}

pub fn verify_lemma_4vertex() -> Result<Certificate> {
    verify_lemma_4vertex_with(LemmaBounds::default())
}

/// Summary of one perfect matching `{ab, cd}` of the 4-set: everything the
/// lemma and the crossing test can see.
#[derive(Clone, Copy)]
struct MatchingClass {
    shared: u8,
    sum: usize,
    has_full: bool,
    /// Number of `(M(ab), M(cd))` assignments in this class.
    weight: u64,
    /// One representative assignment.
    rep: (u8, u8),
}

fn matching_classes() -> Vec<MatchingClass> {
    let mut classes: Vec<MatchingClass> = Vec::new();
    for m1 in 0u8..32 {
        for m2 in 0u8..32 {
            let shared = m1 & m2;
            let sum = (m1.count_ones() + m2.count_ones()) as usize;
            let has_full = m1 == 31 || m2 == 31;
            match classes
                .iter_mut()
                .find(|c| c.shared == shared && c.sum == sum && c.has_full == has_full)
            {
                Some(c) => c.weight += 1,
                None => classes.push(MatchingClass { shared, sum, has_full, weight: 1, rep: (m1, m2) }),
            }
        }
    }
    classes
}

/// Scans all `32^6` layer assignments on the six pairs of a 4-set.
///
/// The three disjoint-pair matchings `{wx,yz}`, `{wy,xz}`, `{wz,xy}` are
/// independent coordinates of the state. Crossing depends on a matching only
/// through the layers its two pairs share, and both parts of the lemma only
/// through its multiplicity sum and whether one of its pairs is full, so the
/// scan runs over triples of such classes and weighs each by its size.
pub fn verify_lemma_4vertex_with(bounds: LemmaBounds) -> Result<Certificate> {
    let rec = Recorder::new("lemma-4vertex", 0);
    let classes = matching_classes();
    let space: u64 = 1 << 30;
    let mut pruned = 0u64;
    let mut examined = 0u64;
    let mut crossing_free = 0u64;
    let mut hyp_i = 0u64;
    let mut hyp_ii = 0u64;
    let mut counterexample: Option<(PMultigraph, &'static str)> = None;

    for a in &classes {
        for b in &classes {
            for c in &classes {
                let weight = a.weight * b.weight * c.weight;
                let e = a.sum + b.sum + c.sum;
                if e < bounds.min_total {
                    pruned += weight;
                    continue;
                }
                examined += weight;
                if sets_cross(a.shared, b.shared, c.shared) {
                    continue;
                }
                crossing_free += weight;
                let mut violated = None;
                if e >= bounds.part_i_threshold {
                    hyp_i += weight;
                    if a.sum.min(b.sum).min(c.sum) > bounds.part_i_bound {
                        violated = Some("part (i)");
                    }
                }
                if e >= bounds.part_ii_threshold {
                    hyp_ii += weight;
                    if !(a.has_full || b.has_full || c.has_full) {
                        violated = violated.or(Some("part (ii)"));
                    }
                }
                if let (Some(part), None) = (violated, &counterexample) {
                    counterexample = Some((realize(a.rep, b.rep, c.rep)?, part));
                }
            }
        }
    }

    let mut witnesses = vec![
        Witness::count("crossing_free_states", crossing_free),
        Witness::count("part_i_hypothesis_states", hyp_i),
        Witness::count("part_ii_hypothesis_states", hyp_ii),
        Witness::count("states_pruned_by_total", pruned),
    ];
    let pass = counterexample.is_none();
    if let Some((g, part)) = counterexample {
        debug_assert!(g.has_three_crossing_pairs().is_none());
        witnesses.insert(0, Witness::multigraph(&g));
        witnesses.insert(1, Witness::count(&format!("violates {part}"), g.edge_count() as u64));
    }
    rec.finish(pass, space, examined + pruned, witnesses).into_result()
}

/// The 4-vertex multigraph with `M(01),M(23) = a`, `M(02),M(13) = b`,
/// `M(03),M(12) = c`.
fn realize(a: (u8, u8), b: (u8, u8), c: (u8, u8)) -> Result<PMultigraph> {
    let mut g = PMultigraph::empty(5, 4)?;
    g.set_layers(0, 1, a.0)?;
    g.set_layers(2, 3, a.1)?;
    g.set_layers(0, 2, b.0)?;
    g.set_layers(1, 3, b.1)?;
    g.set_layers(0, 3, c.0)?;
    g.set_layers(1, 2, c.1)?;
    Ok(g)
}

/// Four times the proved upper bound on `f_5(m)`, that is `7m^2 - m`.
pub fn f5_upper_bound_times4(m: i128) -> i128 {
    7 * m * m - m
}

fn b(n: i128) -> i128 {
    b_formula(n as u64) as i128
}

/// Both corollary inequalities for odd `n` in `[9, n_max]`, multiplied
/// through by 4 so that everything stays integral.
pub fn verify_corollary_inequalities(n_max: u64) -> Result<Certificate> {
    corollary_check(n_max, "corollary-bf", |lhs, rhs| lhs < rhs)
}

/// The corollary check with the comparison reversed; it must fail.
pub fn verify_corollary_mutant(n_max: u64) -> Result<Certificate> {
    corollary_check(n_max, "corollary-bf-mutant", |lhs, rhs| lhs >= rhs)
}

fn corollary_check(n_max: u64, claim: &str, holds: fn(i128, i128) -> bool) -> Result<Certificate> {
    check_n_max(n_max)?;
    let rec = Recorder::new(claim, 0);
    let mut space = 0;
    let mut first_bad: Option<(u64, &str)> = None;
    for n in (9..=n_max).step_by(2) {
        space += 1;
        let ni = n as i128;
        let rhs = 4 * b(ni);
        let m = ni - 5;
        let lhs_a = 4 * b(m) + f5_upper_bound_times4(m) + 4 * (7 * m + 10);
        let m = ni - 6;
        let binom = binom2(m as usize) as i128;
        let lhs_b = 4 * b(m) + 2 * (ni - 9) + f5_upper_bound_times4(m) + 4 * (binom + 10 * m + 20);
        if first_bad.is_none() {
            if !holds(lhs_a, rhs) {
                first_bad = Some((n, "n violating (a)"));
            } else if !holds(lhs_b, rhs) {
                first_bad = Some((n, "n violating (b)"));
            }
        }
    }
    let witnesses = match first_bad {
        Some((n, label)) => vec![Witness::count(label, n)],
        None => vec![Witness::count("odd_n_checked", space)],
    };
    rec.finish(first_bad.is_none(), space, space, witnesses).into_result()
}

/// For odd `n` in `[9, n_max]`, `b(n-4) + f4(n-4) + 5(n-4) + 4 = b(n)`; for
/// even `n` in `[4, n_max]`, `b(n) - b(n-1) = 3 C(n/2, 2)`.
pub fn verify_section4_arithmetic(n_max: u64) -> Result<Certificate> {
    section4_check(n_max, "section4-arith", 4)
}

/// The same chain with the constant term dropped; it must fail.
pub fn verify_section4_mutant(n_max: u64) -> Result<Certificate> {
    section4_check(n_max, "section4-arith-mutant", 0)
}

fn section4_check(n_max: u64, claim: &str, constant: i128) -> Result<Certificate> {
    check_n_max(n_max)?;
    let rec = Recorder::new(claim, 0);
    let mut space = 0;
    let mut odd_failures = 0;
    let mut first_bad: Option<(u64, &str)> = None;
    for n in 4..=n_max {
        let ni = n as i128;
        let ok = if n % 2 == 1 {
            if n < 9 {
                continue;
            }
            let m = ni - 4;
            let ok = b(m) + f4_formula(m as u64) as i128 + 5 * m + constant == b(ni);
            odd_failures += u64::from(!ok);
            ok
        } else {
            b(ni) - b(ni - 1) == 3 * binom2(n as usize / 2) as i128
        };
        space += 1;
        if !ok && first_bad.is_none() {
            let label = if n % 2 == 1 { "odd n violating the chain" } else { "even n violating the degree identity" };
            first_bad = Some((n, label));
        }
    }
    let mut witnesses = vec![Witness::count("values_checked", space)];
    if let Some((n, label)) = first_bad {
        witnesses.insert(0, Witness::count(label, n));
        witnesses.push(Witness::count("odd_failures", odd_failures));
    }
    rec.finish(first_bad.is_none(), space, space, witnesses).into_result()
}

fn check_n_max(n_max: u64) -> Result<()> {
    if !(9..=1_000_000).contains(&n_max) {
        return Err(param(format!("n_max must lie in [9, 1000000], got {n_max}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn failed(r: Result<Certificate>) -> Certificate {
        match r {
            Err(Error::VerificationFailed(c)) => *c,
            other => panic!("expected a failing certificate, got {other:?}"),
        }
    }

    #[test]
    fn class_weights_cover_every_matching() {
        let classes = matching_classes();
        assert_eq!(classes.iter().map(|c| c.weight).sum::<u64>(), 1024);
    }

    #[test]
    fn lemma_holds_and_accounts_for_every_state() {
        let c = verify_lemma_4vertex().unwrap();
        assert_eq!(c.space, 32u64.pow(6));
        assert_eq!(c.visited, c.space);
        assert!(c.count("part_i_hypothesis_states").unwrap() > 0);
        assert!(c.count("part_ii_hypothesis_states").unwrap() > 0);
    }

    #[test]
    fn skipping_small_totals_keeps_the_verdict() {
        let c = verify_lemma_4vertex_with(LemmaBounds { min_total: 22, ..Default::default() }).unwrap();
        let full = verify_lemma_4vertex().unwrap();
        assert_eq!(c.visited, full.visited);
        assert!(c.count("states_pruned_by_total").unwrap() > 0);
        assert_eq!(c.count("part_i_hypothesis_states"), full.count("part_i_hypothesis_states"));
    }

    #[test]
    fn mutants() {
        // A looser bound is a weaker statement and still holds.
        let loose = LemmaBounds { part_i_bound: 6, ..Default::default() };
        assert!(verify_lemma_4vertex_with(loose).is_ok());
        // A tighter bound fails, e.g. on a = 5, b = c = 10.
        let tight = failed(verify_lemma_4vertex_with(LemmaBounds { part_i_bound: 4, ..Default::default() }));
        assert!(matches!(tight.witnesses[0], Witness::Multigraph(_)));
        // Lowering the part (i) threshold admits a = 6, b = 6, c = 10.
        let low = LemmaBounds { part_i_threshold: 22, ..Default::default() };
        let c = failed(verify_lemma_4vertex_with(low));
        let Witness::Multigraph(j) = &c.witnesses[0] else { panic!() };
        let g: PMultigraph = j.clone().try_into().unwrap();
        assert!(g.has_three_crossing_pairs().is_none());
        assert!(g.edge_count() >= 22);
        // Part (ii) fails at 21: all shared layers inside {1,2}, M = {1,2,3,4} and {1,2,5}.
        let ii = LemmaBounds { part_ii_threshold: 21, ..Default::default() };
        assert!(verify_lemma_4vertex_with(ii).is_err());
    }

    #[test]
    fn corollary_holds_and_mutant_fails_at_9() {
        let c = verify_corollary_inequalities(10001).unwrap();
        assert_eq!(c.space, 4997);
        let m = failed(verify_corollary_mutant(10001));
        assert_eq!(m.count("n violating (a)"), Some(9));
        // n = 9, part (a): b(4) + 27 + 28 + 10 = 69 < 70.
        assert_eq!(f5_upper_bound_times4(4), 4 * 27);
        assert_eq!(b(4) + 27 + 28 + 10, 69);
        assert!(matches!(verify_corollary_inequalities(8), Err(Error::Parameter(_))));
    }

    #[test]
    fn section4_chain() {
        let c = verify_section4_arithmetic(10001).unwrap();
        assert_eq!(c.space, 4997 + 4999);
        assert_eq!(b(5) + f4_formula(5) as i128 + 25 + 4, 70);
        assert_eq!(b(8) - b(7), 18);
        let m = failed(verify_section4_mutant(10001));
        assert_eq!(m.count("odd_failures"), Some(4997));
        assert_eq!(m.count("odd n violating the chain"), Some(9));
    }
}
