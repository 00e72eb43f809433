use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid precision: {0}")]
    InvalidPrecision(String),

    #[error("insufficient precision: need at least {required} decimal digits, have {available}")]
    InsufficientPrecision { required: u32, available: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected order {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix of order {0} is too small (need n >= 2)")]
    OrderTooSmall(usize),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("invalid pivot pair ({i}, {j}) for order {n}")]
    InvalidPair { i: usize, j: usize, n: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("pairs ({0}) and ({1}) share an index")]
    NotDisjoint(String, String),

    #[error("position {position} out of range for ordering of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("operation requires order {required}, matrix has order {found}")]
    UnsupportedOrder { required: usize, found: usize },

    #[error("zero pattern violated: {0}")]
    PatternViolation(String),

    #[error("search exceeded the cap of {0} orderings")]
    SearchCap(usize),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
