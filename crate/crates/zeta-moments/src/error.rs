//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain an operation is defined on.
    #[error("range error: {0}")]
    Range(String),

    /// Structurally invalid input (bad combination of arguments, empty data).
    #[error("input error: {0}")]
    Input(String),

    /// A text input failed to parse; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A requested computation would exceed a configured resource budget.
    #[error("resource error: {what} needs {needed} bytes, budget is {budget} bytes")]
    Resource {
        what: String,
        needed: u64,
        budget: u64,
    },

    /// A numeric routine failed to reach its target tolerance.
    #[error("numeric error: {what} reached {achieved:e}, requested {requested:e}")]
    Numeric {
        what: String,
        achieved: f64,
        requested: f64,
    },

    /// A computation-level failure (e.g. zero-count certification).
    #[error("computation error: {0}")]
    Computation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
