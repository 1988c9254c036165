use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {got} outside supported range 1..={max}")]
    UnsupportedDimension { got: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("no points")]
    NoPoints,

    #[error("coordinate {value} of point {point} outside [0,1]")]
    OutOfRange { point: usize, value: f64 },

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("infeasible construction: {0}")]
    Infeasible(String),

    #[error("target {epsilon} not reached by {n_max} points (discrepancy {value})")]
    TargetNotReached { epsilon: f64, n_max: usize, value: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
