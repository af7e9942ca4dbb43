use alloc::string::String;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("quiver rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("vertex {vertex} out of range for rank {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("unsupported field size q={0}")]
    UnsupportedField(u32),
    #[error("inconsistent rank table: {0}")]
    InconsistentRanks(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("interpolation did not stabilize: {0}")]
    NonStabilizing(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid stratum: {0}")]
    InvalidStratum(String),
    #[error("configuration not in generic position: {0}")]
    NonGeneric(String),
    #[error("invalid ADHM datum: {0}")]
    InvalidDatum(String),
    #[error("singular linear part of affine transform")]
    SingularTransform,
}

pub type Result<T> = core::result::Result<T, Error>;
