use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix must be square and nonempty: {0}")]
    Shape(String),

    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("matrix is not {r}-potent")]
    NotPotent { r: u32 },

    #[error("potency exponent must be at least 2, got {0}")]
    BadExponent(u32),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("dimension {n} exceeds enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("target rank {rank} unreachable for r = {r}: {reason}")]
    UnreachableRank { r: u32, rank: usize, reason: String },

    #[error("power iteration did not converge in {iterations} iterations (last estimate {estimate})")]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error("semigroup closure truncated at {cap} members; verdict withheld")]
    Truncated { cap: usize },

    #[error("unknown claim id {0:?}")]
    UnknownClaim(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
