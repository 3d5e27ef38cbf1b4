use thiserror::Error;

/// Errors raised by the algebra engine and the liaison toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arithmetic outside the domain of an operation (inverting zero, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An operation was called with arguments violating its preconditions.
    #[error("usage error: {0}")]
    Usage(String),
    /// Malformed input text.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// A "general position" choice kept failing after the retry budget.
    #[error("genericity failure: {0}")]
    Genericity(String),
    /// A construction produced an object violating its contract.
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
