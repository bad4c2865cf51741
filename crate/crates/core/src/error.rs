use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, got {got}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("matrix is not symmetric: |a_ij - a_ji| = {deviation:e} exceeds tolerance")]
    NotSymmetric { deviation: f64 },

    #[error("nonpositive curvature p^H M p = {curvature:e} at CG iteration {iteration}; matrix is not SPD")]
    NonPositiveCurvature { iteration: usize, curvature: f64 },

    #[error("matrix is not positive definite ({context}: {value:e})")]
    NotPositiveDefinite { context: &'static str, value: f64 },

    #[error("matrix is singular to working precision (pivot {pivot} of {dim})")]
    Singular { pivot: usize, dim: usize },

    #[error("dense {what} unavailable: dimension {dim} exceeds cap {cap}")]
    TooLarge {
        what: &'static str,
        dim: usize,
        cap: usize,
    },

    #[error("dense eigenvalue iteration failed to converge (dimension {dim})")]
    EigenNoConvergence { dim: usize },

    #[error("negative mu = {0:e}: A^-1 B must have a nonnegative spectrum")]
    NegativeMu(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid sparse structure: {0}")]
    InvalidStructure(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(op: &'static str, expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { op, expected, got })
    }
}
