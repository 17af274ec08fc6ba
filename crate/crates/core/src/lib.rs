//! Constructions, Fano-plane detectors and exhaustive verifiers for the Turán
//! problem of the Fano plane on small vertex counts.
//!
//! Vertices are 0-indexed throughout. Hypergraphs are 3-uniform with edges
//! stored as a bitset over colex ranks of triples.

pub mod canon;
pub mod construct;
pub mod error;
pub mod fano;
pub mod graph;
pub mod hypergraph;
pub mod io;
pub mod multigraph;
pub mod permutation;
pub mod sample;
pub mod search;
pub mod vertex_set;

pub use canon::{canonical_form, is_canonical, is_isomorphic, CanonicalForm};
pub use construct::{b_formula, construct, recognize_balanced_bipartite, Family};
pub use error::{Error, Result};
pub use fano::{contains_clique, contains_fano, find_fano, DetectionMethod, FanoEmbedding};
pub use graph::Graph;
pub use hypergraph::{Hypergraph, Triple};
pub use multigraph::{CrossingWitness, PMultigraph};
pub use search::{Certificate, Verdict, Witness};
pub use vertex_set::VertexSet;

/// Version tag stamped into every certificate.
pub const TOOL_VERSION: &str = concat!("fanoturan ", env!("CARGO_PKG_VERSION"));
