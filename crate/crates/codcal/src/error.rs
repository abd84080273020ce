//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied argument violates an operation's contract.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A numerical procedure failed (e.g. singular covariance).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A data file could not be parsed; carries the offending location.
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        /// 1-based data row (header excluded).
        row: usize,
        /// Column name or 1-based position.
        column: String,
        message: String,
    },

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A Monte-Carlo trial failed; carries the trial index.
    #[error("trial {index} failed: {source}")]
    Trial {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
