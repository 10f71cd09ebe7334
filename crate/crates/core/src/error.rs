use std::io;

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A quadrature rule is too coarse for the requested accuracy.
    #[error("accuracy error: {what} (deviation {deviation:e} exceeds {tolerance:e})")]
    Accuracy {
        what: String,
        deviation: f64,
        tolerance: f64,
    },

    /// Evaluation point outside the domain of the operator (e.g. on a pole).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
