use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::hypergraph::Hypergraph;
use crate::io::HypergraphJson;
use crate::multigraph::{MultigraphJson, PMultigraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Evidence attached to a certificate: counterexamples, extremal objects, or
/// named tallies gathered during the scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Hypergraph(HypergraphJson),
    Graph(GraphJson),
    Multigraph(MultigraphJson),
    Count { label: String, value: u64 },
}

impl Witness {
    pub fn hypergraph(h: &Hypergraph) -> Self {
        Witness::Hypergraph(h.into())
    }

    pub fn graph(g: &Graph) -> Self {
        Witness::Graph(GraphJson { n: g.n(), edges: g.edges().map(|(u, v)| [u, v]).collect() })
    }

    pub fn multigraph(g: &PMultigraph) -> Self {
        Witness::Multigraph(g.into())
    }

    pub fn count(label: &str, value: u64) -> Self {
        Witness::Count { label: label.to_string(), value }
    }

    /// The value of the tally named `label`, if this is one.
    pub fn count_value(&self, label: &str) -> Option<u64> {
        match self {
            Witness::Count { label: l, value } if l == label => Some(*value),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub claim: String,
    pub verdict: Verdict,
    /// Size of the declared search space, after pruning is accounted for.
    pub space: u64,
    pub visited: u64,
    pub witnesses: Vec<Witness>,
    pub seed: u64,
    pub elapsed_ms: u64,
    pub tool_version: String,
}

impl Certificate {
    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// `Ok` for a passing certificate, [`Error::VerificationFailed`] otherwise.
    pub fn into_result(self) -> Result<Certificate> {
        if self.is_pass() {
            Ok(self)
        } else {
            Err(Error::VerificationFailed(Box::new(self)))
        }
    }

    /// First tally named `label`.
    pub fn count(&self, label: &str) -> Option<u64> {
        self.witnesses.iter().find_map(|w| w.count_value(label))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    /// Parses and checks the structural invariants: failures carry a
    /// witness, and passes visited exactly the declared space.
    pub fn from_json(s: &str) -> Result<Certificate> {
        let c: Certificate = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Parse { line: 1, message: m.to_string() });
        match self.verdict {
            Verdict::Fail if self.witnesses.is_empty() => bad("a failing certificate needs a witness"),
            Verdict::Pass if self.visited != self.space => bad("a pass must visit the whole space"),
            _ if self.visited > self.space => bad("visited exceeds the declared space"),
            _ => Ok(()),
        }
    }
}

/// Collects timing and provenance for one verifier run.
pub(crate) struct Recorder {
    claim: String,
    seed: u64,
    started: Instant,
}

impl Recorder {
    pub(crate) fn new(claim: &str, seed: u64) -> Self {
        Recorder { claim: claim.to_string(), seed, started: Instant::now() }
    }

    pub(crate) fn finish(self, pass: bool, space: u64, visited: u64, witnesses: Vec<Witness>) -> Certificate {
        assert!(pass || !witnesses.is_empty(), "failing certificates carry a witness");
        Certificate {
            claim: self.claim,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            space,
            visited,
            witnesses,
            seed: self.seed,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
            tool_version: crate::TOOL_VERSION.to_string(),
        }
    }
}
