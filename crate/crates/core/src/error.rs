use std::fmt;

/// Errors raised by the algebra kernels and the text formats.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Mismatched contexts, out-of-range indices, malformed arguments.
    #[error("argument error: {0}")]
    Argument(String),
    /// An element that had to be a unit was not invertible.
    #[error("not a unit: {0}")]
    NotUnit(String),
    #[error("division by zero")]
    DivisionByZero,
    /// A computation exceeded its configured resource budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A required p-th root does not exist.
    #[error("inconsistent: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn arg(msg: impl fmt::Display) -> Self {
        Error::Argument(msg.to_string())
    }

    pub(crate) fn parse(line: usize, col: usize, msg: impl fmt::Display) -> Self {
        Error::Parse { line, col, msg: msg.to_string() }
    }
}
