//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid qubit index {qubit} for a {num_qubits}-qubit register")]
    InvalidQubit { qubit: usize, num_qubits: usize },

    #[error("duplicate target qubits")]
    DuplicateTargets,

    #[error("state is not normalized (|Σ|aᵢ|² − 1| = {0:.3e})")]
    NotNormalized(f64),

    #[error("requested measurement branch has probability {0:.3e}, below 1e-14")]
    ImpossibleOutcome(f64),

    #[error("visibility {0} outside [0, 1]")]
    VisibilityOutOfRange(f64),

    #[error("mean counts per setting must be a non-negative number (got {0})")]
    NonPositiveCounts(f64),

    #[error("matrix is not physical: {0}")]
    NotPhysical(String),

    #[error("coincidence table incomplete: {0}")]
    MissingSettings(String),

    #[error("coincidence table has no counts")]
    EmptyCounts,

    #[error("unknown basis label {0:?}")]
    UnknownBasis(String),

    #[error("witness target is not maximally entangled (Schmidt coefficients {0:.6}, {1:.6})")]
    NotMaximallyEntangled(f64, f64),

    #[error("no completed teleportation run to account")]
    NoRun,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config: {0}")]
    Config(String),

    #[error("missing artifact: {0}")]
    MissingArtifact(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
