use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by design construction, estimation, simulation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid probability: {0}")]
    Probability(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("rejection sampler gave up after {cap} attempts")]
    AttemptCap { cap: u64 },

    #[error("{path}: row {row}, column {column}: {message}")]
    Cell {
        path: String,
        row: u64,
        column: usize,
        message: String,
    },

    #[error("{path}: {message}")]
    Format { path: String, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
