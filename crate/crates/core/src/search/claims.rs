//! Registry of named verification claims, as run by `verify <id>`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::certificate::{Certificate, Recorder, Witness};
use super::ex::{verify_ex, ExOptions};
use super::verifiers::{
    verify_detector_agreement, verify_fact_2_4, verify_fact_tetra_range, verify_lemma_2_3,
    verify_lemma_n7, verify_matching_facts,
};
use crate::error::{param, Error, Result};
use crate::multigraph::{
    f4_formula, max_edges_no_crossing_with, SearchOptions, f5_lower_bound, f5_upper_bound_times4, verify_corollary_inequalities,
    verify_lemma_4vertex, verify_section4_arithmetic,
};

/// Upper end of the integer ranges checked by the arithmetic claims.
pub const ARITHMETIC_N_MAX: u64 = 10_001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    LemmaN7,
    Lemma23,
    Fact24,
    FactTetra,
    Lemma4Vertex,
    CorollaryBf,
    Section4Arith,
    MatchingFacts,
    Ex7,
    Ex8,
    F4Exact,
    F5Exact,
    DetectorAgreement,
}

impl Claim {
    pub const ALL: [Claim; 13] = [
        Claim::LemmaN7,
        Claim::Lemma23,
        Claim::Fact24,
        Claim::FactTetra,
        Claim::Lemma4Vertex,
        Claim::CorollaryBf,
        Claim::Section4Arith,
        Claim::MatchingFacts,
        Claim::Ex7,
        Claim::Ex8,
        Claim::F4Exact,
        Claim::F5Exact,
        Claim::DetectorAgreement,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::LemmaN7 => "lemma-n7",
            Claim::Lemma23 => "lemma-2-3",
            Claim::Fact24 => "fact-2-4",
            Claim::FactTetra => "fact-tetra",
            Claim::Lemma4Vertex => "lemma-4vertex",
            Claim::CorollaryBf => "corollary-bf",
            Claim::Section4Arith => "section4-arith",
            Claim::MatchingFacts => "matching-facts",
            Claim::Ex7 => "ex-7",
            Claim::Ex8 => "ex-8",
            Claim::F4Exact => "f4-exact",
            Claim::F5Exact => "f5-exact",
            Claim::DetectorAgreement => "detector-agreement",
        }
    }

    /// Claims that only run with the long-run option.
    pub fn is_long_run(self) -> bool {
        matches!(self, Claim::Ex8)
    }

    pub fn ids() -> Vec<&'static str> {
        Claim::ALL.iter().map(|c| c.id()).collect()
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| param(format!("unknown claim `{s}`; valid ids: {}", Claim::ids().join(", "))))
    }
}

#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub long_run: bool,
    pub checkpoint: Option<PathBuf>,
}

/// Runs one claim. A failed verification comes back as an `Ok` certificate
/// with verdict `fail`; `Err` is reserved for refusing to run.
pub fn run_claim(claim: Claim, opts: &RunOptions) -> Result<Certificate> {
    let result = match claim {
        Claim::LemmaN7 => verify_lemma_n7(),
        Claim::Lemma23 => verify_lemma_2_3(),
        Claim::Fact24 => verify_fact_2_4(),
        Claim::FactTetra => verify_fact_tetra_range(&[4, 5, 6, 7]),
        Claim::Lemma4Vertex => verify_lemma_4vertex(),
        Claim::CorollaryBf => verify_corollary_inequalities(ARITHMETIC_N_MAX),
        Claim::Section4Arith => verify_section4_arithmetic(ARITHMETIC_N_MAX),
        Claim::MatchingFacts => verify_matching_facts(),
        Claim::Ex7 => verify_ex(7, &ExOptions::default()),
        Claim::Ex8 => verify_ex(
            8,
            &ExOptions { long_run: opts.long_run, checkpoint: opts.checkpoint.clone(), ..Default::default() },
        ),
        Claim::F4Exact => verify_f_exact(4, &[4, 5, 6]),
        Claim::F5Exact => verify_f_exact(5, &[3, 4, 5]),
        Claim::DetectorAgreement => verify_detector_agreement(opts.seed, &[7, 8, 9], 1000),
    };
    let mut cert = match result {
        Ok(c) => c,
        Err(Error::VerificationFailed(c)) => *c,
        Err(e) => return Err(e),
    };
    cert.seed = opts.seed;
    Ok(cert)
}

/// Runs every claim that fits the options, in registry order.
pub fn run_all(opts: &RunOptions) -> Result<Vec<Certificate>> {
    Claim::ALL
        .into_iter()
        .filter(|c| opts.long_run || !c.is_long_run())
        .map(|c| run_claim(c, opts))
        .collect()
}

/// `f_p(n)` by exact search against the closed form (`p = 4`) or the lower
/// constructions and the proved upper bound (`p = 5`).
pub fn verify_f_exact(p: usize, ns: &[usize]) -> Result<Certificate> {
    let rec = Recorder::new(&format!("f{p}-exact"), 0);
    let mut nodes = 0;
    let mut witnesses = Vec::new();
    let mut bad: Option<Witness> = None;
    for &n in ns {
        let out = max_edges_no_crossing_with(p, n, &SearchOptions::default())?;
        nodes += out.nodes;
        let value = out.max_edges as u64;
        let nn = n as u64;
        let ok = match p {
            4 => value == f4_formula(nn),
            5 => value == f5_lower_bound(nn) && 4 * value as i128 <= f5_upper_bound_times4(nn as i128),
            _ => false,
        };
        witnesses.push(Witness::count(&format!("f{p}({n})"), value));
        witnesses.push(Witness::multigraph(&out.witness));
        if !ok && bad.is_none() {
            bad = Some(Witness::count(&format!("n with unexpected f{p}"), nn));
        }
    }
    let pass = bad.is_none();
    if let Some(w) = bad {
        witnesses.insert(0, w);
    }
    witnesses.push(Witness::count("search_nodes", nodes));
    rec.finish(pass, nodes, nodes, witnesses).into_result()
}
