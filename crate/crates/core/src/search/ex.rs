//! Exact `ex(n, Fano)` for `n <= 8` by complement-side enumeration.
//!
//! Complements are scanned by size `t = 0, 1, 2, ..`; the first size with a
//! Fano-free primal gives `ex = C(n,3) - t`, and its survivors are the
//! extremal hypergraphs. Every smaller size was scanned in full, so the upper
//! bound does not lean on monotonicity.

use std::collections::BTreeSet;
use std::path::PathBuf;

use super::certificate::{Certificate, Recorder, Witness};
use super::checkpoint::{CheckpointWriter, Frame};
use super::enumerate::{Dedup, EnumerationPlan, CHUNK};
use super::verifiers::primal;
use crate::canon::{canonical_form, CanonicalForm};
use crate::construct::{construct, Family};
use crate::error::{capability, Error, Result};
use crate::fano::{find_fano, DetectionMethod, FanoCopies};
use crate::hypergraph::binom3;

#[derive(Clone, Debug)]
pub struct ExOptions {
    /// Required for `n = 8`, which scans about 1.7e9 complements.
    pub long_run: bool,
    /// Append progress frames here and resume from them when present.
    pub checkpoint: Option<PathBuf>,
    pub dedup: Dedup,
}

impl Default for ExOptions {
    fn default() -> Self {
        ExOptions { long_run: false, checkpoint: None, dedup: Dedup::None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeTally {
    pub target: usize,
    pub visited: u64,
    pub survivors: u64,
}

#[derive(Clone, Debug)]
pub struct ExResult {
    pub n: usize,
    pub max_edges: usize,
    /// Extremal isomorphism classes, sorted.
    pub classes: Vec<CanonicalForm>,
    /// Complement masks of every extremal labeling found (canonical ones
    /// only under [`Dedup::Canonical`]).
    pub extremal_complements: Vec<u64>,
    pub sizes: Vec<SizeTally>,
}

impl ExResult {
    pub fn visited(&self) -> u64 {
        self.sizes.iter().map(|s| s.visited).sum()
    }
}

pub fn max_fano_free_edges(n: usize, opts: &ExOptions) -> Result<ExResult> {
    if !(4..=8).contains(&n) {
        return Err(capability(format!("exhaustive ex(n, Fano) covers 4 <= n <= 8, got {n}")));
    }
    if n == 8 && !opts.long_run {
        return Err(capability("ex(8, Fano) is a long run; pass the long-run option"));
    }
    let copies = FanoCopies::new(n)?;
    let keep = |c: u64| copies.is_empty() || !copies.primal_contains(c);
    let mut writer = match &opts.checkpoint {
        Some(path) => Some(CheckpointWriter::open(path, n as u8)?),
        None => None,
    };
    let mut sizes = Vec::new();
    for t in 0..=binom3(n) {
        let plan = EnumerationPlan::new(n, t, opts.dedup)?;
        let (visited, survivors) = match writer.as_mut() {
            Some((w, existing)) => scan_checkpointed(&plan, &keep, w, existing.progress(t as u8))?,
            None => {
                let tally = plan.scan(keep);
                (tally.visited, tally.survivors)
            }
        };
        sizes.push(SizeTally { target: t, visited, survivors: survivors.len() as u64 });
        if survivors.is_empty() {
            continue;
        }
        let mut classes = BTreeSet::new();
        for &c in &survivors {
            let h = primal(n, c);
            // Re-verify every survivor with an independent detector.
            if find_fano(&h, DetectionMethod::Embedding).is_some() {
                return Err(Error::Internal(format!("detectors disagree on complement {c:#x}")));
            }
            classes.insert(canonical_form(&h)?);
        }
        return Ok(ExResult {
            n,
            max_edges: binom3(n) - t,
            classes: classes.into_iter().collect(),
            extremal_complements: survivors,
            sizes,
        });
    }
    unreachable!("the empty hypergraph is Fano-free")
}

fn scan_checkpointed<F>(
    plan: &EnumerationPlan,
    keep: &F,
    writer: &mut CheckpointWriter,
    progress: super::checkpoint::Progress,
) -> Result<(u64, Vec<u64>)>
where
    F: Fn(u64) -> bool + Sync,
{
    let space = plan.space();
    let mut frontier = progress.frontier;
    let mut survivors = progress.survivors;
    let batch = CHUNK * rayon::current_num_threads() as u64;
    while frontier < space {
        let end = space.min(frontier + batch);
        let tally = plan.scan_range(frontier, end, keep);
        frontier = end;
        writer.append(&Frame {
            target: plan.target as u8,
            frontier,
            visited: frontier,
            survivors: tally.survivors.clone(),
        })?;
        survivors.extend(tally.survivors);
    }
    Ok((space, survivors))
}

/// The expected answer for each `n` in the exhaustive regime.
fn expected(n: usize) -> Result<(usize, Vec<CanonicalForm>)> {
    Ok(match n {
        4..=6 => (binom3(n), vec![canonical_form(&construct(Family::Complete, n)?)?]),
        7 => {
            let mut v = vec![
                canonical_form(&construct(Family::BalancedBipartite, 7)?)?,
                canonical_form(&construct(Family::J7, 7)?)?,
            ];
            v.sort();
            (30, v)
        }
        _ => (48, vec![canonical_form(&construct(Family::BalancedBipartite, n)?)?]),
    })
}

/// Certificate for `ex-n`: the exact value and the extremal classes match
/// the expected ones.
pub fn verify_ex(n: usize, opts: &ExOptions) -> Result<Certificate> {
    let rec = Recorder::new(&format!("ex-{n}"), 0);
    let result = max_fano_free_edges(n, opts)?;
    let (want_edges, want_classes) = expected(n)?;
    let pass = result.max_edges == want_edges && result.classes == want_classes;
    let mut witnesses: Vec<Witness> =
        result.classes.iter().map(|c| Witness::hypergraph(&c.to_hypergraph())).collect();
    witnesses.push(Witness::count("max_edges", result.max_edges as u64));
    witnesses.push(Witness::count("extremal_classes", result.classes.len() as u64));
    witnesses.push(Witness::count("extremal_labelings", result.extremal_complements.len() as u64));
    for s in &result.sizes {
        witnesses.push(Witness::count(&format!("complements_of_size_{}", s.target), s.visited));
    }
    let visited = result.visited();
    rec.finish(pass, visited, visited, witnesses).into_result()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_n_are_complete() {
        for n in 4..=6 {
            let r = max_fano_free_edges(n, &ExOptions::default()).unwrap();
            assert_eq!(r.max_edges, binom3(n));
            assert_eq!(r.classes.len(), 1);
            assert_eq!(r.sizes.len(), 1);
        }
    }

    #[test]
    fn ex7() {
        let r = max_fano_free_edges(7, &ExOptions::default()).unwrap();
        assert_eq!(r.max_edges, 30);
        assert_eq!(r.classes.len(), 2);
        assert_eq!(r.extremal_complements.len(), 56);
        assert_eq!(r.sizes.iter().map(|s| s.target).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4, 5]);
        assert!(verify_ex(7, &ExOptions::default()).unwrap().is_pass());
    }

    #[test]
    fn canonical_dedup_finds_the_same_classes() {
        let plain = max_fano_free_edges(7, &ExOptions::default()).unwrap();
        let dedup = max_fano_free_edges(7, &ExOptions { dedup: Dedup::Canonical, ..Default::default() }).unwrap();
        assert_eq!(plain.classes, dedup.classes);
        assert_eq!(dedup.extremal_complements.len(), 2);
    }

    #[test]
    fn checkpoint_resume_matches_plain_run() {
        let dir = std::env::temp_dir().join(format!("ftck-ex-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ex7.ftck");
        let _ = std::fs::remove_file(&path);
        let opts = ExOptions { checkpoint: Some(path.clone()), ..Default::default() };
        let first = max_fano_free_edges(7, &opts).unwrap();
        // A second run resumes from the finished frames without rescanning.
        let second = max_fano_free_edges(7, &opts).unwrap();
        assert_eq!(first.classes, second.classes);
        assert_eq!(first.extremal_complements, second.extremal_complements);
        assert_eq!(first.max_edges, 30);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn guards() {
        assert!(matches!(max_fano_free_edges(9, &ExOptions::default()), Err(Error::Capability(_))));
        assert!(matches!(max_fano_free_edges(8, &ExOptions::default()), Err(Error::Capability(_))));
    }
}
