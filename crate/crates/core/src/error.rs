use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RadoError {
    #[error("invalid equation: {0}")]
    InvalidEquation(String),

    #[error("invalid colouring: {0}")]
    InvalidColouring(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("sum range {needed} exceeds capacity {capacity}")]
    Capacity { needed: u64, capacity: u64 },

    #[error("count overflowed 128 bits")]
    Overflow,

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("reflection pivot {pivot} does not map [{lo}, {hi}] onto itself")]
    PivotMismatch { pivot: i64, lo: i64, hi: i64 },

    #[error("search node budget of {0} exhausted")]
    BudgetExceeded(u64),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal contradiction: {0}")]
    Contradiction(String),
}

pub type Result<T> = std::result::Result<T, RadoError>;
