use thiserror::Error;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported shift: {0}")]
    UnsupportedShift(String),
    #[error("not regular at g=0: {0}")]
    NotRegular(String),
    #[error("pole at point: {0}")]
    PoleAtPoint(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid rank {0}: rank must be at least 2")]
    InvalidRank(usize),
    #[error("flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("degenerate weight: {0}")]
    DegenerateWeight(String),
    #[error("invalid subalgebra: {0}")]
    InvalidSubalgebra(String),
    #[error("invalid triple: {0}")]
    InvalidTriple(String),
    #[error("unsupported cycle: {0}")]
    UnsupportedCycle(String),
    #[error("invalid gauge: {0}")]
    InvalidGauge(String),
    #[error("precondition violation: {0}")]
    Precondition(String),
    #[error("depth exceeded: a depth of at least {0} is required")]
    IncreaseDepth(usize),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
