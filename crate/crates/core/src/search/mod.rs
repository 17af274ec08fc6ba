//! Exhaustive searches and the verifiers built on them. Every verifier
//! returns a [`Certificate`]; a failed verification surfaces as
//! [`crate::Error::VerificationFailed`] carrying the failing certificate.

mod certificate;
pub mod checkpoint;
pub mod claims;
pub mod enumerate;
pub mod ex;
pub mod verifiers;

pub use certificate::{Certificate, GraphJson, Verdict, Witness};
pub(crate) use certificate::Recorder;
pub use claims::{run_all, run_claim, Claim, RunOptions};
pub use enumerate::{Dedup, EnumerationPlan};
pub use ex::{max_fano_free_edges, verify_ex, ExOptions, ExResult};
pub use verifiers::{
    fano_line_count, primal, verify_detector_agreement, verify_fact_2_4, verify_fact_tetra,
    verify_fact_tetra_range, verify_lemma_2_3, verify_lemma_2_3_with, verify_lemma_n7,
    verify_lemma_n7_with, verify_matching_facts,
};
