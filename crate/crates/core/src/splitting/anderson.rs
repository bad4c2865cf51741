//! Anderson acceleration in the unconstrained (difference-column) form, and
//! its application to the PMHSS map.
//!
//! With `g_k = f(x_k) - x_k` and forward differences
//! `dX_j = x_{j+1} - x_j`, `dG_j = g_{j+1} - g_j`, each step solves
//! `min ||g_k - dG a||` over complex `a` and moves to
//! `x_{k+1} = x_k + g_k - (dX + dG) a`.

use std::collections::VecDeque;

use num_complex::Complex;

use crate::error::{check_dim, Result};
use crate::linalg::{least_squares_qr, vector, DenseMatrix, LstsqSolution};
use crate::report::{SolveReport, SolverConfig, StagnationGuard, StopReason};
use crate::scalar::{Real, Scalar};
use crate::splitting::pmhss::PmhssMap;
use crate::system::SplitSystem;

/// Least-squares coefficients for the current residual against the stored
/// residual differences. An empty history gives an empty coefficient vector.
pub fn aa_lsq_step<S: Scalar>(dg: &[&[S]], g: &[S]) -> Result<LstsqSolution<S>> {
    for c in dg {
        check_dim("aa_lsq_step history column", g.len(), c.len())?;
    }
    least_squares_qr(&DenseMatrix::from_columns(g.len(), dg), g)
}

#[derive(Debug, Clone)]
pub struct AndersonUpdate<S: Scalar> {
    /// The accelerated iterate.
    pub next: Vec<S>,
    /// `||g_k - dG a||`, the minimized residual of the combination.
    pub lsq_residual: S::Real,
    pub coeffs: Vec<S>,
}

/// History of an Anderson-accelerated fixed-point iteration.
#[derive(Debug, Clone)]
pub struct Anderson<S: Scalar> {
    window: Option<usize>,
    dx: VecDeque<Vec<S>>,
    dg: VecDeque<Vec<S>>,
    prev: Option<(Vec<S>, Vec<S>)>,
}

impl<S: Scalar> Anderson<S> {
    /// `window = None` keeps every difference column.
    pub fn new(window: Option<usize>) -> Self {
        Self {
            window,
            dx: VecDeque::new(),
            dg: VecDeque::new(),
            prev: None,
        }
    }

    pub fn depth(&self) -> usize {
        self.dg.len()
    }

    /// Feeds the current iterate `x` and its residual `g = f(x) - x`.
    pub fn update(&mut self, x: &[S], g: &[S]) -> Result<AndersonUpdate<S>> {
        check_dim("anderson update", x.len(), g.len())?;
        if let Some((xp, gp)) = self.prev.take() {
            self.dx.push_back(vector::sub(x, &xp));
            self.dg.push_back(vector::sub(g, &gp));
            if let Some(m) = self.window {
                while self.dg.len() > m {
                    self.dx.pop_front();
                    self.dg.pop_front();
                }
            }
        }
        let cols: Vec<&[S]> = self.dg.iter().map(Vec::as_slice).collect();
        let sol = aa_lsq_step(&cols, g)?;

        let mut next = vector::add(x, g);
        for ((a, dx), dg) in sol.coeffs.iter().zip(&self.dx).zip(&self.dg) {
            if *a == S::zero() {
                continue;
            }
            vector::axpy(-*a, dx, &mut next);
            vector::axpy(-*a, dg, &mut next);
        }
        self.prev = Some((x.to_vec(), g.to_vec()));
        Ok(AndersonUpdate {
            next,
            lsq_residual: sol.residual_norm,
            coeffs: sol.coeffs,
        })
    }
}

/// Anderson-accelerated PMHSS from the zero vector.
pub fn aa_pmhss_solve<T: Real>(sys: &SplitSystem<T>, cfg: &SolverConfig) -> Result<SolveReport<Complex<T>>> {
    aa_pmhss_solve_from(sys, cfg, &vector::zeros(sys.n()))
}

/// Anderson-accelerated PMHSS from `x0`.
///
/// Each outer step evaluates the PMHSS map at the accelerated iterate
/// (inner solve warm-started there), forms `g_k`, and takes the Anderson
/// update. The loop is controlled by the minimized g-residual
/// `||g_k - dG a|| / ||b||`; convergence is only declared once the new
/// iterate also passes the explicit true-residual check. The loop also stops
/// when `||g_k||` has not decreased by 0.1% in 10 consecutive steps.
/// At least one step is always taken, even from an exact solution.
pub fn aa_pmhss_solve_from<T: Real>(
    sys: &SplitSystem<T>,
    cfg: &SolverConfig,
    x0: &[Complex<T>],
) -> Result<SolveReport<Complex<T>>> {
    cfg.validate()?;
    check_dim("aa_pmhss_solve x0", sys.n(), x0.len())?;
    let map = PmhssMap::new(sys, cfg.inner)?;
    let tol = T::lit(cfg.outer_tol);
    let bnorm = sys.rhs_norm();
    let scale = if bnorm > T::zero() { bnorm } else { T::one() };

    let mut x = x0.to_vec();
    let r0 = sys.relative_residual(&x);
    let mut history = vec![r0];
    let mut monitor = Vec::new();
    let mut per_outer = Vec::new();
    let mut stop = StopReason::MaxOuter;
    let mut aa = Anderson::new(cfg.aa_window);
    let mut guard: Option<StagnationGuard> = None;

    {
        for _ in 0..cfg.max_outer {
            let (fx, its) = map.step(&x, Some(&x))?;
            per_outer.push(its);
            let g = vector::sub(&fx, &x);
            let gnorm = (vector::norm(&g) / scale).to_f64_lossy();

            let upd = aa.update(&x, &g)?;
            x = upd.next;
            let lsq = upd.lsq_residual / scale;
            monitor.push(lsq);
            let res = sys.relative_residual(&x);
            history.push(res);

            if lsq <= tol && res <= tol {
                stop = StopReason::Tolerance;
                break;
            }
            let stalled = match guard.as_mut() {
                Some(gd) => gd.observe(gnorm),
                None => {
                    guard = Some(StagnationGuard::new(gnorm));
                    false
                }
            };
            if stalled {
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
        residual_history: history,
        monitor_history: monitor,
        converged: stop == StopReason::Tolerance,
        stop_reason: stop,
    })
}
