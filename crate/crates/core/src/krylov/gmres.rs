//! Full (non-restarted) GMRES with left preconditioning.
//!
//! Arnoldi with modified Gram-Schmidt (reorthogonalized under heavy
//! cancellation), Givens rotations on the Hessenberg factor. Convergence is tested on the preconditioned relative
//! residual `||M^{-1}(b - Cx)|| / ||M^{-1} b||`: the Givens estimate first,
//! then an explicit recomputation before convergence is accepted.

use crate::error::{check_dim, Result};
use crate::krylov::operator::{IdentityPreconditioner, LinearOperator, Preconditioner};
use crate::linalg::vector;
use crate::report::{SolveReport, SolverConfig, StagnationGuard, StopReason};
use crate::scalar::{Real, Scalar};
use num_traits::{Float, One, Zero};

/// Arnoldi breakdown threshold, relative to the norm of the new direction
/// before orthogonalization.
const BREAKDOWN_TOL: f64 = 1e-14;

/// Second Gram-Schmidt pass threshold ("twice is enough").
const REORTH_RATIO: f64 = 0.7;

/// Failed explicit checks tolerated before the run is declared stagnated.
const MAX_EXPLICIT_FAILURES: usize = 3;

/// Arnoldi process on `M^{-1} C` with modified Gram-Schmidt. A second
/// pass runs whenever the first removes more than `1 - REORTH_RATIO` of the
/// vector's norm.
#[derive(Debug, Clone)]
pub struct Arnoldi<S: Scalar> {
    basis: Vec<Vec<S>>,
    /// Whether the last extension produced a new basis vector.
    open: bool,
}

/// One new Hessenberg column.
#[derive(Debug, Clone)]
pub struct ArnoldiStep<S: Scalar> {
    /// `h_{0..=k, k}` followed by the subdiagonal `h_{k+1, k}`.
    pub h: Vec<S>,
    /// The new direction vanished against the current basis.
    pub breakdown: bool,
}

impl<S: Scalar> Arnoldi<S> {
    /// Starts from `v0 / ||v0||`; `v0` must be nonzero.
    pub fn new(v0: &[S]) -> Self {
        let inv = S::Real::one() / vector::norm(v0);
        Self {
            basis: vec![v0.iter().map(|v| v.scale(inv)).collect()],
            open: true,
        }
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    /// Orthogonalizes `M^{-1} C v_k` against the basis. On breakdown the
    /// basis is left as is and further extension is refused.
    pub fn extend(
        &mut self,
        op: &dyn LinearOperator<S>,
        precond: &mut dyn Preconditioner<S>,
    ) -> Result<ArnoldiStep<S>> {
        assert!(self.open, "Arnoldi::extend after breakdown");
        let last = self.basis.last().expect("basis is never empty");
        let mut w = precond.apply(&op.apply(last))?;
        let wnorm0 = vector::norm(&w);
        let mut h = vec![S::zero(); self.basis.len() + 1];
        let mut hnext = wnorm0;
        for pass in 0..2 {
            let before = hnext;
            for (v, hj) in self.basis.iter().zip(h.iter_mut()) {
                let c = vector::dot(v, &w);
                vector::axpy(-c, v, &mut w);
                *hj += c;
            }
            hnext = vector::norm(&w);
            if pass == 0 && hnext > S::Real::lit(REORTH_RATIO) * before {
                break;
            }
        }
        *h.last_mut().expect("h has k + 2 entries") = S::from_real(hnext);
        let breakdown = !(hnext > S::Real::lit(BREAKDOWN_TOL) * wnorm0);
        if breakdown {
            self.open = false;
        } else {
            let inv = S::Real::one() / hnext;
            self.basis.push(w.iter().map(|v| v.scale(inv)).collect());
        }
        Ok(ArnoldiStep { h, breakdown })
    }
}

/// Complex Givens rotation `G = [[conj(c), conj(s)], [-s, c]]` with
/// `G [a; b] = [r; 0]`.
fn givens<S: Scalar>(a: S, b: S) -> (S, S, S) {
    let r = (a.abs_sqr() + b.abs_sqr()).sqrt();
    if r == S::Real::zero() {
        return (S::one(), S::zero(), S::zero());
    }
    let inv = S::Real::one() / r;
    (a.scale(inv), b.scale(inv), S::from_real(r))
}

fn apply_givens<S: Scalar>(c: S, s: S, x: S, y: S) -> (S, S) {
    (c.conj() * x + s.conj() * y, -s * x + c * y)
}

/// Solves `C x = b` from the zero vector. `precond = None` runs
/// unpreconditioned GMRES.
///
/// With `cfg.track_true_residual` the iterate is rebuilt every step and
/// `||b - C x|| / ||b||` recorded; stagnation is then judged on that true
/// residual.
pub fn gmres_solve<S: Scalar>(
    op: &dyn LinearOperator<S>,
    b: &[S],
    precond: Option<&mut dyn Preconditioner<S>>,
    cfg: &SolverConfig,
) -> Result<SolveReport<S>> {
    cfg.validate()?;
    let n = op.dim();
    check_dim("gmres_solve rhs", n, b.len())?;
    let mut identity = IdentityPreconditioner;
    let precond: &mut dyn Preconditioner<S> = match precond {
        Some(p) => p,
        None => &mut identity,
    };
    let tol = S::Real::lit(cfg.outer_tol);
    let zero = S::Real::zero();
    let bnorm = vector::norm(b);
    let inner_start = precond.inner_iterations();

    let mut report = SolveReport {
        solution: vector::zeros(n),
        outer_iterations: 0,
        total_inner_iterations: 0,
        inner_iterations_per_outer: Vec::new(),
        residual_history: Vec::new(),
        monitor_history: Vec::new(),
        converged: false,
        stop_reason: StopReason::MaxOuter,
    };
    if bnorm == zero {
        report.converged = true;
        report.stop_reason = StopReason::Tolerance;
        report.residual_history.push(zero);
        report.monitor_history.push(zero);
        return Ok(report);
    }

    // x0 = 0, so the preconditioned initial residual is M^{-1} b.
    let z0 = precond.apply(b)?;
    let beta = vector::norm(&z0);
    if cfg.track_true_residual {
        report.residual_history.push(S::Real::one());
    }
    report.monitor_history.push(S::Real::one());
    if beta == zero {
        report.converged = true;
        report.stop_reason = StopReason::Tolerance;
        report.total_inner_iterations = precond.inner_iterations() - inner_start;
        return Ok(report);
    }

    let mut arnoldi = Arnoldi::new(&z0);
    // R factor columns after rotation, Givens pairs, rotated rhs
    let mut r_cols: Vec<Vec<S>> = Vec::new();
    let mut rot: Vec<(S, S)> = Vec::new();
    let mut gvec: Vec<S> = vec![S::from_real(beta)];
    let mut guard = StagnationGuard::new(1.0);
    let mut explicit_failures = 0usize;
    let mut x = vector::zeros::<S>(n);
    let mut x_current = true;

    let solve_iterate = |r_cols: &[Vec<S>], gvec: &[S], basis: &[Vec<S>]| -> Vec<S> {
        let k = r_cols.len();
        let mut y = gvec[..k].to_vec();
        for row in (0..k).rev() {
            let mut s = y[row];
            for col in row + 1..k {
                s -= r_cols[col][row] * y[col];
            }
            y[row] = s / r_cols[row][row];
        }
        let mut x = vector::zeros(n);
        for (yj, vj) in y.iter().zip(basis) {
            vector::axpy(*yj, vj, &mut x);
        }
        x
    };

    for k in 0..cfg.max_outer {
        let before = precond.inner_iterations();
        let ArnoldiStep { mut h, breakdown } = arnoldi.extend(op, &mut *precond)?;
        report
            .inner_iterations_per_outer
            .push(precond.inner_iterations() - before);
        report.outer_iterations += 1;

        for (j, &(c, s)) in rot.iter().enumerate() {
            let (a, bb) = apply_givens(c, s, h[j], h[j + 1]);
            h[j] = a;
            h[j + 1] = bb;
        }
        let (c, s, r) = givens(h[k], h[k + 1]);
        h[k] = r;
        h[k + 1] = S::zero();
        rot.push((c, s));
        let gk = gvec[k];
        let (g0, g1) = apply_givens(c, s, gk, S::zero());
        gvec[k] = g0;
        gvec.push(g1);
        h.truncate(k + 1);
        r_cols.push(h);
        x_current = false;

        let estimate = g1.modulus() / beta;
        report.monitor_history.push(estimate);

        let mut monitored = estimate;
        if cfg.track_true_residual {
            x = solve_iterate(&r_cols, &gvec, arnoldi.basis());
            x_current = true;
            let res = vector::norm(&vector::sub(b, &op.apply(&x))) / bnorm;
            report.residual_history.push(res);
            monitored = res;
        }

        if estimate <= tol || breakdown {
            if !x_current {
                x = solve_iterate(&r_cols, &gvec, arnoldi.basis());
                x_current = true;
            }
            let r = vector::sub(b, &op.apply(&x));
            let explicit = vector::norm(&precond.apply(&r)?) / beta;
            if explicit <= tol {
                report.converged = true;
                report.stop_reason = StopReason::Tolerance;
                break;
            }
            explicit_failures += 1;
            if breakdown || explicit_failures >= MAX_EXPLICIT_FAILURES {
                report.stop_reason = StopReason::Stagnation;
                break;
            }
        }
        if guard.observe(monitored.to_f64_lossy()) {
            report.stop_reason = StopReason::Stagnation;
            break;
        }
        if breakdown {
            break;
        }
    }

    if !x_current {
        x = solve_iterate(&r_cols, &gvec, arnoldi.basis());
    }
    if !cfg.track_true_residual {
        let res = vector::norm(&vector::sub(b, &op.apply(&x))) / bnorm;
        report.residual_history.push(res);
    }
    report.solution = x;
    report.total_inner_iterations = precond.inner_iterations() - inner_start;
    Ok(report)
}
