//! Solver configuration and the report every driver returns.

use crate::error::{Error, Result};
use crate::inner::InnerSolverConfig;
use crate::scalar::Scalar;

/// Stagnation: the monitored norm must drop below `STAGNATION_FACTOR` times
/// its best value at least once every `STAGNATION_WINDOW` iterations.
pub const STAGNATION_WINDOW: usize = 10;
pub const STAGNATION_FACTOR: f64 = 0.999;

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Relative tolerance of the outer iteration.
    pub outer_tol: f64,
    pub max_outer: usize,
    pub inner: InnerSolverConfig,
    /// Anderson history window; `None` keeps every difference column.
    pub aa_window: Option<usize>,
    /// GMRES: rebuild the iterate and record the true residual every
    /// iteration. Costs O(k n) per step.
    pub track_true_residual: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            outer_tol: 1e-8,
            max_outer: 200,
            inner: InnerSolverConfig::default(),
            aa_window: None,
            track_true_residual: true,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.outer_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "outer tolerance must be positive, got {}",
                self.outer_tol
            )));
        }
        if self.max_outer == 0 {
            return Err(Error::InvalidConfig("max_outer must be at least 1".into()));
        }
        if self.aa_window == Some(0) {
            return Err(Error::InvalidConfig(
                "Anderson window must be at least 1 (or unbounded)".into(),
            ));
        }
        self.inner.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    Tolerance,
    MaxOuter,
    Stagnation,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Tolerance => "tolerance",
            Self::MaxOuter => "max_outer",
            Self::Stagnation => "stagnation",
        }
    }
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SolveReport<S: Scalar> {
    pub solution: Vec<S>,
    pub outer_iterations: usize,
    /// All inner iterations, including any not attributed to an outer step
    /// (e.g. the initial preconditioned residual in GMRES).
    pub total_inner_iterations: usize,
    pub inner_iterations_per_outer: Vec<usize>,
    /// True relative residual, initial guess first. One entry per outer
    /// iteration plus one; for GMRES with tracking disabled only the final
    /// residual is recorded.
    pub residual_history: Vec<S::Real>,
    /// The quantity the method's own stopping test looks at. PMHSS: the
    /// true residual, as in `residual_history`. AA: the minimized residual
    /// `||g_k - dG a|| / ||b||`, one entry per outer step. GMRES: the
    /// Givens estimate of the preconditioned relative residual, initial
    /// value first.
    pub monitor_history: Vec<S::Real>,
    pub converged: bool,
    pub stop_reason: StopReason,
}

impl<S: Scalar> SolveReport<S> {
    pub fn final_residual(&self) -> Option<S::Real> {
        self.residual_history.last().copied()
    }
}

/// Tracks whether a monitored norm is still making progress.
#[derive(Debug, Clone)]
pub(crate) struct StagnationGuard {
    best: f64,
    since_improvement: usize,
}

impl StagnationGuard {
    pub(crate) fn new(initial: f64) -> Self {
        Self {
            best: initial,
            since_improvement: 0,
        }
    }

    /// Records a new value; returns `true` once the window has elapsed
    /// without a sufficient decrease.
    pub(crate) fn observe(&mut self, value: f64) -> bool {
        if value < STAGNATION_FACTOR * self.best {
            self.best = value;
            self.since_improvement = 0;
        } else {
            self.since_improvement += 1;
        }
        self.since_improvement >= STAGNATION_WINDOW
    }
}
