use thiserror::Error;

use crate::search::Certificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The request is valid but exceeds a deliberate size or budget cap.
    #[error("capability exceeded: {0}")]
    Capability(String),

    /// A branch-and-bound search ran out of nodes before proving optimality.
    #[error("node budget of {budget} exhausted; best lower bound found is {best}")]
    BudgetExhausted { budget: u64, best: u32 },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),

    /// A verifier found a counterexample; the certificate carries it.
    #[error("verification of `{}` failed", .0.claim)]
    VerificationFailed(Box<Certificate>),

    /// Two independent computations disagreed.
    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn param(msg: impl Into<String>) -> Error {
    Error::Parameter(msg.into())
}

pub(crate) fn capability(msg: impl Into<String>) -> Error {
    Error::Capability(msg.into())
}
