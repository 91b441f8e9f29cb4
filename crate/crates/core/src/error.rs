use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid tensor shape: {0}")]
    InvalidShape(String),

    #[error("non-finite entry at flat position {0}")]
    NonFinite(usize),

    /// Off-diagonal entry below zero. The index is 1-based.
    #[error("tensor is not essentially nonnegative: entry {index:?} = {value}")]
    NotEssentiallyNonnegative { index: Vec<usize>, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("singular matrix: pivot {pivot} below threshold")]
    SingularMatrix { pivot: usize },

    #[error("Newton iteration did not converge after {iters} iterations (residual {residual:e})")]
    NewtonCapExceeded { iters: usize, residual: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
