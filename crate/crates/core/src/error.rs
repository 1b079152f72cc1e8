use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("malformed cocycle: {0}")]
    MalformedCocycle(String),

    #[error("degree mismatch for variable {var}: {detail}")]
    DegreeMismatch { var: u32, detail: String },

    #[error("missing value for variable {0}")]
    MissingVariable(u32),

    #[error("variable collision: {0}")]
    VariableCollision(String),

    #[error("expansion cap exceeded: {what} needs {needed} terms, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("size guard exceeded: {what} needs {needed}, limit is {limit}")]
    SizeGuard { what: String, needed: u128, limit: u128 },

    #[error("polynomial is not supported on left-normed monomials with a common first variable")]
    NotLeftNormed,

    #[error("algebra {0} is not a Lie algebra")]
    NotLie(String),

    #[error("trial budget exhausted after {0} trials")]
    BudgetExhausted(usize),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("rational {0} is not representable in the target ring")]
    NotRepresentable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
