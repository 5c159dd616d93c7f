use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid instance: {0}")]
    Invalid(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("instance has no clique modulator")]
    MissingModulator,
    #[error("{what}: {got} exceeds the configured limit {limit}")]
    Capacity { what: &'static str, limit: usize, got: usize },
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("usage error: {0}")]
    Usage(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Returns an `Error::Internal` from the enclosing function when the
/// condition is false.
#[macro_export]
macro_rules! ensure_internal {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Internal(format!($($fmt)+)));
        }
    };
}
