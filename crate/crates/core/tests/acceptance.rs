//! Acceptance gate: one line per criterion, nonzero exit if any fails.
//! Run with `cargo test -p fanoturan --test acceptance`.

use std::time::{Duration, Instant};

use fanoturan::canon::canonical_form;
use fanoturan::construct::{b_formula, construct, Family};
use fanoturan::multigraph::{
    f4_formula, max_edges_no_crossing, verify_corollary_inequalities, verify_lemma_4vertex,
    verify_section4_arithmetic,
};
use fanoturan::search::{
    max_fano_free_edges, verify_detector_agreement, verify_ex, verify_fact_2_4, verify_fact_tetra_range,
    verify_lemma_2_3, verify_matching_facts, ExOptions,
};
use fanoturan::{Certificate, Hypergraph, Witness};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passed(c: fanoturan::Result<Certificate>) -> Result<Certificate, String> {
    let c = c.map_err(|e| e.to_string())?;
    ensure(c.is_pass(), format!("{} returned verdict fail", c.claim))?;
    c.validate().map_err(|e| e.to_string())?;
    Ok(c)
}

fn tally(c: &Certificate, label: &str) -> Result<u64, String> {
    c.count(label).ok_or_else(|| format!("{} has no `{label}` tally", c.claim))
}

fn ex7() -> Check {
    let r = max_fano_free_edges(7, &ExOptions::default()).map_err(|e| e.to_string())?;
    let size = |t: usize| r.sizes.iter().find(|s| s.target == t).map(|s| s.visited);
    ensure(size(5) == Some(324_632), "five-edge complements not fully scanned")?;
    ensure(size(4) == Some(52_360), "four-edge complements not fully scanned")?;
    ensure(r.max_edges == 30, format!("ex = {}", r.max_edges))?;
    let mut want = vec![
        canonical_form(&construct(Family::BalancedBipartite, 7).unwrap()).unwrap(),
        canonical_form(&construct(Family::J7, 7).unwrap()).unwrap(),
    ];
    want.sort();
    ensure(r.classes == want, format!("{} extremal classes, not {{B_7, J_7}}", r.classes.len()))?;
    Ok(format!("ex(7) = 30, classes {{B_7, J_7}}, {} complements", r.visited()))
}

fn exact(p: usize, n: usize, want: usize) -> Result<usize, String> {
    let (got, witness) = max_edges_no_crossing(p, n, u64::MAX).map_err(|e| e.to_string())?;
    ensure(got == want, format!("f{p}({n}) = {got}, expected {want}"))?;
    ensure(witness.edge_count() == got && witness.has_three_crossing_pairs().is_none(), "bad witness")?;
    Ok(got)
}

fn f5() -> Check {
    exact(5, 4, 25)?;
    exact(5, 5, 40)?;
    Ok("f5(4) = 25, f5(5) = 40".into())
}

fn f4() -> Check {
    exact(4, 4, f4_formula(4) as usize)?;
    exact(4, 5, f4_formula(5) as usize)?;
    ensure(f4_formula(4) == 20 && f4_formula(5) == 32, "closed form")?;
    Ok("f4(4) = 20, f4(5) = 32".into())
}

fn lemma_4vertex() -> Check {
    let c = passed(verify_lemma_4vertex())?;
    ensure(c.space == 1 << 30, format!("space {} is not 32^6", c.space))?;
    let (i, ii) = (tally(&c, "part_i_hypothesis_states")?, tally(&c, "part_ii_hypothesis_states")?);
    ensure(i > 0 && ii > 0, "a part had no states satisfying its hypothesis")?;
    Ok(format!("32^6 states, parts (i) and (ii) hold on {i} and {ii} states"))
}

fn lemma_2_3() -> Check {
    let c = passed(verify_lemma_2_3())?;
    ensure((6_000_000..=8_000_000).contains(&c.visited), format!("{} configurations", c.visited))?;
    Ok(format!("{} configurations, H - v is B_6", c.visited))
}

fn fact_2_4() -> Check {
    let c = passed(verify_fact_2_4())?;
    let (link, bound) = (tally(&c, "max_fano_free_link")?, tally(&c, "composed_bound")?);
    ensure(link == 10 && bound == 46 && bound < b_formula(8), format!("link {link}, bound {bound}"))?;
    Ok("max link 10, bound 46 < 48 = b(8)".into())
}

fn matching() -> Check {
    let c = passed(verify_matching_facts())?;
    ensure(c.space == 1 << 15, "not the full 2^15 scan")?;
    let classes = tally(&c, "ten_edge_pm_free_classes")?;
    ensure(classes == 1, format!("{classes} classes of 10-edge PM-free graphs"))?;
    Ok("2^15 graphs, one class of 10-edge PM-free graphs".into())
}

fn tetra() -> Check {
    let c = passed(verify_fact_tetra_range(&[4, 5, 6, 7]))?;
    Ok(format!("n = 4..7, {} states", c.visited))
}

fn arithmetic() -> Check {
    let a = passed(verify_corollary_inequalities(10_001))?;
    let b = passed(verify_section4_arithmetic(10_001))?;
    ensure(a.space == 4997, "corollary did not cover every odd n in [9, 10001]")?;
    Ok(format!("{} odd n for the corollary, {} values for the chain", a.space, b.space))
}

fn detectors() -> Check {
    let c = passed(verify_detector_agreement(42, &[7, 8, 9], 1000))?;
    ensure(c.visited == 3000, format!("{} instances", c.visited))?;
    Ok("3000 seeded instances, three methods agree".into())
}

fn ex8() -> Check {
    let opts = ExOptions { long_run: true, ..Default::default() };
    let c = passed(verify_ex(8, &opts))?;
    ensure(tally(&c, "max_edges")? == 48, "ex(8) != 48")?;
    ensure(tally(&c, "extremal_classes")? == 1, "B_8 is not the unique extremal class")?;
    ensure(tally(&c, "complements_of_size_7")? == 231_917_400, "seven-edge complements not fully scanned")?;
    let want = canonical_form(&construct(Family::BalancedBipartite, 8).unwrap()).unwrap();
    let same = match c.witnesses.first() {
        Some(Witness::Hypergraph(g)) => {
            let h = Hypergraph::try_from(g.clone()).map_err(|e| e.to_string())?;
            canonical_form(&h).unwrap() == want
        }
        _ => false,
    };
    ensure(same, "extremal witness is not B_8")?;
    Ok(format!("ex(8) = 48, unique class B_8, {} complements", c.visited))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("ex(7, fano)", ex7, Duration::from_secs(60)),
        ("f5 exact", f5, Duration::from_secs(120)),
        ("f4 exact", f4, Duration::from_secs(600)),
        ("4-vertex 5-multigraph lemma", lemma_4vertex, Duration::from_secs(300)),
        ("deleting a vertex leaves B_6", lemma_2_3, Duration::from_secs(60)),
        ("K_6 link bound", fact_2_4, Duration::from_secs(10)),
        ("6-vertex matching facts", matching, Duration::from_secs(1)),
        ("tetrahedron at b(n) edges", tetra, Duration::from_secs(60)),
        ("corollary and chain arithmetic", arithmetic, Duration::from_secs(1)),
        ("detector agreement", detectors, Duration::from_secs(60)),
        ("ex(8, fano), long run", ex8, Duration::from_secs(4 * 3600)),
    ];
    let mut failures = 0;
    for (i, (name, check, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > budget => Err(format!("{msg}; took {took:.1?}, budget {budget:?}")),
            other => other,
        };
        match result {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({took:.2?})", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({took:.2?})", i + 1);
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
