use thiserror::Error;

use crate::patterns::Certificate;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Param(String),

    #[error("structure error: {0}")]
    Structure(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("search budget of {budget} nodes exceeded")]
    Budget { budget: u64 },

    /// A required freeness or goodness property failed; the certificate proves it.
    #[error("property violated: {0}")]
    Violation(Box<Certificate>),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Param(msg.into()))
}
