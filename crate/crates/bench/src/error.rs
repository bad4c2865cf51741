use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Solver(#[from] hssolve::Error),

    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON output failed: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{method}: iteration count changed between repetitions ({first} then {later})")]
    Nondeterministic {
        method: &'static str,
        first: usize,
        later: usize,
    },
}

pub type Result<T> = std::result::Result<T, BenchError>;
