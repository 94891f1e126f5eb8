//! Error type shared by all modules.

use thiserror::Error;

use crate::Int;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("rank {0} outside the supported range 1..=4")]
    RankOutOfRange(usize),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("discriminant {0} is a perfect square; no hyperbolic isometry")]
    NoIsometry(Int),

    #[error("discriminant {0} is not a perfect square; no embedding into U")]
    NoEmbedding(Int),

    #[error("no counterexample stream: {0}")]
    NoStream(String),

    #[error("negative Mukai square {0}: no semistable sheaf exists")]
    NoSemistableSheaf(Int),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("divisibility failure: {0}")]
    DivisibilityFailure(String),

    #[error("class {0} is not in the positive cone")]
    NotInPositiveCone(String),

    #[error("no positive-cone polarization found within perturbation budget {budget}")]
    PolarizationNotFound { budget: u32 },

    // Raised when a stabilized isometry fails to produce integral orbit data.
    #[error("internal contract violation: {0}")]
    ContractViolation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
