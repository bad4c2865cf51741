use serde::{Deserialize, Serialize};

/// One method on one problem instance, in the column layout of the result
/// tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkRow {
    pub method: String,
    pub problem: String,
    pub n: usize,
    pub outer_iterations: usize,
    pub total_inner_iterations: usize,
    pub wall_time_mean_seconds: f64,
    /// Sample standard deviation over the timed runs as a percentage of the
    /// mean; only with two or more repetitions.
    pub wall_time_rel_std_percent: Option<f64>,
    /// `||b - (A + iB) x||`.
    pub true_residual_norm: f64,
    pub rhs_norm: f64,
    /// `||x* - x||` against the dense direct solution.
    pub error_vs_oracle: Option<f64>,
    /// `||(A + B)^{-1} r||`.
    pub preconditioned_residual_norm: Option<f64>,
    pub converged: bool,
    pub stop_reason: String,
}

impl BenchmarkRow {
    pub fn relative_residual(&self) -> f64 {
        if self.rhs_norm > 0.0 {
            self.true_residual_norm / self.rhs_norm
        } else {
            self.true_residual_norm
        }
    }
}
