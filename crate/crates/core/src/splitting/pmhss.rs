//! The PMHSS fixed-point iteration with `alpha = 1`, `V = A`:
//!
//! ```text
//! (A + B) x_{k+1} = (1+i)/2 (A - iB) x_k + (1-i)/2 b
//! ```

use num_complex::Complex;

use crate::error::{check_dim, Result};
use crate::inner::{InnerSolver, InnerSolverConfig};
use crate::linalg::vector;
use crate::report::{SolveReport, SolverConfig, StagnationGuard, StopReason};
use crate::scalar::Real;
use crate::system::SplitSystem;

/// One PMHSS update bound to a system, with the inner solver for `A + B`
/// prepared once.
#[derive(Debug, Clone)]
pub struct PmhssMap<'a, T: Real> {
    sys: &'a SplitSystem<T>,
    solver: InnerSolver<T>,
    /// `(1 - i)/2 b`, fixed across steps.
    shifted_rhs: Vec<Complex<T>>,
}

impl<'a, T: Real> PmhssMap<'a, T> {
    pub fn new(sys: &'a SplitSystem<T>, inner: InnerSolverConfig) -> Result<Self> {
        let solver = InnerSolver::new(sys.sum_matrix(), inner)?;
        let half = T::lit(0.5);
        let lo = Complex::new(half, -half);
        let shifted_rhs = sys.rhs().iter().map(|&b| lo * b).collect();
        Ok(Self {
            sys,
            solver,
            shifted_rhs,
        })
    }

    pub fn system(&self) -> &SplitSystem<T> {
        self.sys
    }

    /// Right-hand side `(1+i)/2 (A - iB) x + (1-i)/2 b` of the update.
    pub fn update_rhs(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        check_dim("pmhss_step", self.sys.n(), x.len())?;
        let n = x.len();
        let mut ax = vec![Complex::new(T::zero(), T::zero()); n];
        let mut bx = ax.clone();
        self.sys.a().mul_vec_into(x, &mut ax);
        self.sys.b().mul_vec_into(x, &mut bx);
        let half = T::lit(0.5);
        let hi = Complex::new(half, half);
        Ok(ax
            .iter()
            .zip(&bx)
            .zip(&self.shifted_rhs)
            .map(|((p, q), &c)| {
                // (A - iB) x = Ax - i Bx
                let v = Complex::new(p.re + q.im, p.im - q.re);
                hi * v + c
            })
            .collect())
    }

    /// Evaluates the map at `x`, warm-starting the inner solve at `warm`.
    /// Returns the new iterate and the inner iterations spent.
    pub fn step(
        &self,
        x: &[Complex<T>],
        warm: Option<&[Complex<T>]>,
    ) -> Result<(Vec<Complex<T>>, usize)> {
        let rhs = self.update_rhs(x)?;
        let res = self.solver.solve(&rhs, warm)?;
        Ok((res.solution, res.iterations))
    }
}

/// A single PMHSS update of `x_k` with the inner solve warm-started at `warm`.
///
/// Prepares the inner solver on every call; drivers keep a [`PmhssMap`].
pub fn pmhss_step<T: Real>(
    sys: &SplitSystem<T>,
    x_k: &[Complex<T>],
    inner: &InnerSolverConfig,
    warm: &[Complex<T>],
) -> Result<(Vec<Complex<T>>, usize)> {
    PmhssMap::new(sys, *inner)?.step(x_k, Some(warm))
}

/// Plain PMHSS iteration from the zero vector.
pub fn pmhss_solve<T: Real>(sys: &SplitSystem<T>, cfg: &SolverConfig) -> Result<SolveReport<Complex<T>>> {
    pmhss_solve_from(sys, cfg, &vector::zeros(sys.n()))
}

/// Plain PMHSS iteration from `x0`. Each inner solve is warm-started at the
/// previous iterate; the loop stops on the true relative residual.
pub fn pmhss_solve_from<T: Real>(
    sys: &SplitSystem<T>,
    cfg: &SolverConfig,
    x0: &[Complex<T>],
) -> Result<SolveReport<Complex<T>>> {
    cfg.validate()?;
    check_dim("pmhss_solve x0", sys.n(), x0.len())?;
    let map = PmhssMap::new(sys, cfg.inner)?;
    let tol = T::lit(cfg.outer_tol);

    let mut x = x0.to_vec();
    let r0 = sys.relative_residual(&x);
    let mut history = vec![r0];
    let mut per_outer = Vec::new();
    let mut guard = StagnationGuard::new(r0.to_f64_lossy());
    let mut stop = StopReason::MaxOuter;

    if r0 <= tol {
        stop = StopReason::Tolerance;
    } else {
        for _ in 0..cfg.max_outer {
            let (next, its) = map.step(&x, Some(&x))?;
            x = next;
            per_outer.push(its);
            let res = sys.relative_residual(&x);
            history.push(res);
            if res <= tol {
                stop = StopReason::Tolerance;
                break;
            }
            if guard.observe(res.to_f64_lossy()) {
                stop = StopReason::Stagnation;
                break;
            }
        }
    }

    Ok(SolveReport {
        solution: x,
        outer_iterations: per_outer.len(),
        total_inner_iterations: per_outer.iter().sum(),
        inner_iterations_per_outer: per_outer,
        monitor_history: history.clone(),
        residual_history: history,
        converged: stop == StopReason::Tolerance,
        stop_reason: stop,
    })
}
