//! One exhaustive verifier per finite statement about small hypergraphs.

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;

use super::certificate::{Certificate, Recorder, Witness};
use super::enumerate::{Dedup, EnumerationPlan};
use crate::canon::{canonical_form, CanonicalForm};
use crate::construct::{
    b_formula, complement_size_at_b, construct, recognize_balanced_bipartite, Family, FANO_LINES,
};
use crate::error::{param, Result};
use crate::fano::{contains_clique, find_fano, DetectionMethod, FanoCopies};
use crate::graph::Graph;
use crate::hypergraph::{binom3, check_permutation, Hypergraph};
use crate::sample::{random_hypergraph, seeded_rng};

/// The hypergraph on `n <= 8` vertices whose non-edges are `complement`.
pub fn primal(n: usize, complement: u64) -> Hypergraph {
    Hypergraph::from_mask(n, full_mask(n) & !complement).expect("n <= 8")
}

fn full_mask(n: usize) -> u64 {
    let items = binom3(n);
    if items == 64 {
        u64::MAX
    } else {
        (1u64 << items) - 1
    }
}

/// Runs all three detectors. `Err` carries the hypergraph when they disagree
/// or a witness is unsound; `Ok` carries the common verdict.
fn detectors_agree(h: &Hypergraph) -> std::result::Result<bool, Witness> {
    let mut verdict = None;
    for m in DetectionMethod::ALL {
        let found = find_fano(h, m);
        if found.is_some_and(|e| !e.is_valid_in(h)) {
            return Err(Witness::hypergraph(h));
        }
        match verdict {
            None => verdict = Some(found.is_some()),
            Some(v) if v != found.is_some() => return Err(Witness::hypergraph(h)),
            Some(_) => {}
        }
    }
    Ok(verdict.expect("three methods ran"))
}

/// How many of the seven Fano lines, with point `i` sent to `sigma[i]`, are
/// edges of `hbar`.
pub fn fano_line_count(hbar: &Hypergraph, sigma: &[usize]) -> Result<usize> {
    if hbar.n() != 7 {
        return Err(param(format!("fano_line_count needs 7 vertices, got {}", hbar.n())));
    }
    check_permutation(sigma, 7)?;
    Ok(FANO_LINES.iter().filter(|&&[a, b, c]| hbar.contains(sigma[a], sigma[b], sigma[c])).count())
}

/// Two distinct complement edges never share exactly one vertex.
fn disjoint_or_share_pair(hbar: &Hypergraph) -> bool {
    let edges: Vec<_> = hbar.edges().map(|t| t.as_set()).collect();
    edges.iter().enumerate().all(|(i, a)| edges[i + 1..].iter().all(|b| a.intersection(*b).len() != 1))
}

pub fn verify_lemma_n7() -> Result<Certificate> {
    verify_lemma_n7_with(&[])
}

/// Every 30-edge Fano-free hypergraph on 7 vertices is `B_7` or `J_7`, and no
/// 31-edge one exists. `extra_classes` are demanded in addition to the two
/// expected ones, which makes the verifier fail; it exists for mutation tests.
pub fn verify_lemma_n7_with(extra_classes: &[Hypergraph]) -> Result<Certificate> {
    let rec = Recorder::new("lemma-n7", 0);
    let (pass, space, witnesses) = scan_n7(extra_classes)?;
    rec.finish(pass, space, space, witnesses).into_result()
}

fn scan_n7(extra_classes: &[Hypergraph]) -> Result<(bool, u64, Vec<Witness>)> {
    let copies = FanoCopies::new(7)?;
    let four = EnumerationPlan::new(7, 4, Dedup::None)?.scan(|c| !copies.primal_contains(c));
    let five = EnumerationPlan::new(7, 5, Dedup::None)?.scan(|c| !copies.primal_contains(c));
    let space = four.visited + five.visited;

    if let Some(&c) = four.survivors.first() {
        let w = vec![Witness::hypergraph(&primal(7, c)), Witness::count("four_edge_survivors", 1)];
        return Ok((false, space, w));
    }
    let b7 = canonical_form(&construct(Family::BalancedBipartite, 7)?)?;
    let j7 = canonical_form(&construct(Family::J7, 7)?)?;
    let mut expected: BTreeSet<CanonicalForm> = [b7.clone(), j7.clone()].into();
    for h in extra_classes {
        expected.insert(canonical_form(h)?);
    }

    let mut found = BTreeSet::new();
    let (mut b7_count, mut j7_count) = (0u64, 0u64);
    for &c in &five.survivors {
        let h = primal(7, c);
        let hbar = Hypergraph::from_mask(7, c)?;
        let form = canonical_form(&h)?;
        let sound = detectors_agree(&h) == Ok(false);
        if !sound || !disjoint_or_share_pair(&hbar) || !expected.contains(&form) {
            return Ok((false, space, vec![Witness::hypergraph(&h)]));
        }
        b7_count += u64::from(form == b7);
        j7_count += u64::from(form == j7);
        found.insert(form);
    }
    if let Some(missing) = expected.difference(&found).next() {
        let w = vec![Witness::hypergraph(&missing.to_hypergraph()), Witness::count("missing_class", 1)];
        return Ok((false, space, w));
    }
    let mut witnesses: Vec<Witness> = found.iter().map(|f| Witness::hypergraph(&f.to_hypergraph())).collect();
    witnesses.extend([
        Witness::count("four_edge_survivors", 0),
        Witness::count("five_edge_survivors", five.survivors.len() as u64),
        Witness::count("extremal_classes", found.len() as u64),
        Witness::count("b7_labelings", b7_count),
        Witness::count("j7_labelings", j7_count),
    ]);
    Ok((true, space, witnesses))
}

/// Triples inside `{0..5}` have colex ranks `0..20`; `{a, b, 6}` has rank
/// `20 + pair_rank(a, b)`.
const K6_TRIPLES: usize = 20;

/// All `2^15` link graphs of vertex 6 over `K = {0..5}`, with the part of `H`
/// inside `K` missing at most two triples. With `d(6) >= min_link` and
/// `H` Fano-free, `H - 6` must be `B_6`.
pub fn verify_lemma_2_3() -> Result<Certificate> {
    verify_lemma_2_3_with(11)
}

pub fn verify_lemma_2_3_with(min_link: usize) -> Result<Certificate> {
    let rec = Recorder::new("lemma-2-3", 0);
    let copies = FanoCopies::new(7)?;
    let mut kparts: Vec<u64> = Vec::new();
    for t in 0..=2 {
        let plan = EnumerationPlan::new(6, t, Dedup::None)?;
        kparts.extend(plan.scan(|_| true).survivors.iter().map(|&c| full_mask(6) & !c));
    }
    let links = 1u64 << 15;
    let space = kparts.len() as u64 * links;

    struct Part {
        hypothesis: u64,
        fano_free: u64,
        counterexample: Option<Hypergraph>,
        unsound: Option<Hypergraph>,
    }
    let parts: Vec<Part> = kparts
        .par_iter()
        .map(|&kmask| {
            let inner = Hypergraph::from_mask(6, kmask).expect("n = 6");
            let is_b6 = recognize_balanced_bipartite(&inner).is_some();
            let mut part = Part { hypothesis: 0, fano_free: 0, counterexample: None, unsound: None };
            for link in 0..links {
                if (link.count_ones() as usize) < min_link {
                    continue;
                }
                part.hypothesis += 1;
                let mask = kmask | link << K6_TRIPLES;
                if copies.primal_contains(!mask & full_mask(7)) {
                    continue;
                }
                part.fano_free += 1;
                let h = Hypergraph::from_mask(7, mask).expect("n = 7");
                if part.unsound.is_none() && find_fano(&h, DetectionMethod::Embedding).is_some() {
                    part.unsound = Some(h.clone());
                }
                if !is_b6 && part.counterexample.is_none() {
                    part.counterexample = Some(h);
                }
            }
            part
        })
        .collect();

    let hypothesis: u64 = parts.iter().map(|p| p.hypothesis).sum();
    let fano_free: u64 = parts.iter().map(|p| p.fano_free).sum();
    let bad = parts.iter().find_map(|p| p.unsound.as_ref().or(p.counterexample.as_ref()));
    let mut witnesses = vec![
        Witness::count("k_parts", kparts.len() as u64),
        Witness::count("hypothesis_states", hypothesis),
        Witness::count("states_outside_hypothesis", space - hypothesis),
        Witness::count("fano_free_states", fano_free),
    ];
    if let Some(h) = bad {
        witnesses.insert(0, Witness::hypergraph(h));
    }
    rec.finish(bad.is_none(), space, space, witnesses).into_result()
}

/// Over a complete 6-set, a Fano-free link of an extra vertex has at most 10
/// edges, so an 8-vertex Fano-free hypergraph containing `K_6` has at most
/// `20 + 10 + 10 + 6 = 46 < b(8)` edges.
pub fn verify_fact_2_4() -> Result<Certificate> {
    let rec = Recorder::new("fact-2-4", 0);
    let copies = FanoCopies::new(7)?;
    let k6 = full_mask(6);
    let links = 1u64 << 15;
    let mut max_link = 0;
    let mut fano_free = 0u64;
    let mut eleven: Option<Hypergraph> = None;
    for link in 0..links {
        let mask = k6 | link << K6_TRIPLES;
        let size = link.count_ones() as usize;
        if copies.primal_contains(!mask & full_mask(7)) {
            if size == 11 && eleven.is_none() {
                eleven = Some(Hypergraph::from_mask(7, mask)?);
            }
        } else {
            fano_free += 1;
            max_link = max_link.max(size);
        }
    }
    let eleven = eleven.expect("some 11-edge link exists");
    let embedding = find_fano(&eleven, DetectionMethod::Embedding);
    let composed = 20 + 2 * max_link as u64 + 6;
    let pass = max_link == 10 && composed == 46 && composed < b_formula(8) && embedding.is_some_and(|e| e.is_valid_in(&eleven));
    let witnesses = vec![
        Witness::hypergraph(&eleven),
        Witness::count("max_fano_free_link", max_link as u64),
        Witness::count("fano_free_links", fano_free),
        Witness::count("composed_bound", composed),
        Witness::count("b8", b_formula(8)),
    ];
    rec.finish(pass, links, links, witnesses).into_result()
}

/// All `2^15` graphs on six vertices: eleven edges force a perfect matching,
/// and the ten-edge graphs without one are exactly the copies of `K_5 + K_1`.
pub fn verify_matching_facts() -> Result<Certificate> {
    let rec = Recorder::new("matching-facts", 0);
    let space = 1u64 << 15;
    let mut k5 = Graph::empty(6)?;
    for v in 1..5 {
        for u in 0..v {
            k5.add_edge(u, v)?;
        }
    }
    let k5_form = k5.canonical_mask()?;
    let mut eleven_plus = 0u64;
    let mut ten_pm_free = 0u64;
    let mut ten_classes = std::collections::BTreeSet::new();
    let mut counterexample = None;
    for mask in 0..space {
        let g = Graph::from_pair_mask(6, mask)?;
        let e = g.edge_count();
        if e >= 11 {
            eleven_plus += 1;
            if !g.has_perfect_matching() && counterexample.is_none() {
                counterexample = Some(g);
            }
        } else if e == 10 && !g.has_perfect_matching() {
            ten_pm_free += 1;
            let form = g.canonical_mask()?;
            ten_classes.insert(form);
            if form != k5_form && counterexample.is_none() {
                counterexample = Some(g);
            }
        }
    }
    let mut witnesses = vec![
        Witness::graph(&k5),
        Witness::count("graphs_with_at_least_11_edges", eleven_plus),
        Witness::count("ten_edge_pm_free_labeled", ten_pm_free),
        Witness::count("ten_edge_pm_free_classes", ten_classes.len() as u64),
    ];
    if let Some(g) = &counterexample {
        witnesses.insert(0, Witness::graph(g));
    }
    let pass = counterexample.is_none() && ten_classes.len() == 1;
    rec.finish(pass, space, space, witnesses).into_result()
}

/// Every `b(n)`-edge hypergraph on `n` vertices contains a tetrahedron, by
/// scanning all complements of size `C(n,3) - b(n)`; also the chain
/// `n(n-1)(n-2) < (n+1)(n-1)(n-2) <= 8 b(n)` for `n` in `[4, 64]`.
pub fn verify_fact_tetra(n: usize) -> Result<Certificate> {
    verify_fact_tetra_range(&[n])
}

pub fn verify_fact_tetra_range(ns: &[usize]) -> Result<Certificate> {
    let rec = Recorder::new("fact-tetra", 0);
    let mut space = 0u64;
    let mut witnesses = Vec::new();
    let mut bad = None;
    for &n in ns {
        if !(4..=7).contains(&n) {
            return Err(param(format!("fact-tetra is checked for 4 <= n <= 7, got {n}")));
        }
        let t = complement_size_at_b(n);
        let tally = EnumerationPlan::new(n, t, Dedup::None)?.scan(|c| !contains_clique(&primal(n, c), 4));
        space += tally.visited;
        witnesses.push(Witness::count(&format!("n{n}_complements_of_size_{t}"), tally.visited));
        if let Some(&c) = tally.survivors.first() {
            bad = bad.or(Some(Witness::hypergraph(&primal(n, c))));
        }
    }
    for n in 4..=64u64 {
        space += 1;
        let lhs = n * (n - 1) * (n - 2);
        let mid = (n + 1) * (n - 1) * (n - 2);
        if !(lhs < mid && mid <= 8 * b_formula(n)) && bad.is_none() {
            bad = Some(Witness::count("n violating the density chain", n));
        }
    }
    witnesses.push(Witness::count("chain_values_checked", 61));
    let pass = bad.is_none();
    if let Some(w) = bad {
        witnesses.insert(0, w);
    }
    rec.finish(pass, space, space, witnesses).into_result()
}

/// The three Fano detectors agree, with sound witnesses, on `samples` random
/// hypergraphs for each `n`, densities drawn uniformly from `[0.3, 0.9]`.
pub fn verify_detector_agreement(seed: u64, ns: &[usize], samples: usize) -> Result<Certificate> {
    let rec = Recorder::new("detector-agreement", seed);
    let mut rng = seeded_rng(seed);
    let mut instances = Vec::new();
    for &n in ns {
        for _ in 0..samples {
            let density = rng.gen_range(0.3..=0.9);
            instances.push(random_hypergraph(&mut rng, n, density)?);
        }
    }
    let verdicts: Vec<std::result::Result<bool, Witness>> = instances.par_iter().map(detectors_agree).collect();
    let space = instances.len() as u64;
    let mut witnesses = Vec::new();
    let mut bad = None;
    for (idx, &n) in ns.iter().enumerate() {
        let chunk = &verdicts[idx * samples..(idx + 1) * samples];
        let with_fano = chunk.iter().filter(|v| matches!(v, Ok(true))).count();
        witnesses.push(Witness::count(&format!("n{n}_containing_fano"), with_fano as u64));
        bad = bad.or_else(|| chunk.iter().find_map(|v| v.clone().err()));
    }
    let pass = bad.is_none();
    if let Some(w) = bad {
        witnesses.insert(0, w);
    }
    rec.finish(pass, space, space, witnesses).into_result()
}
