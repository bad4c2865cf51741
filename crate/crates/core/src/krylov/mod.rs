//! Full GMRES with left preconditioning, and the PMHSS and PRESB
//! preconditioned drivers for the complex system.

pub mod gmres;
pub mod operator;
pub mod precond;

use num_complex::Complex;

pub use gmres::{gmres_solve, Arnoldi, ArnoldiStep};
pub use operator::{IdentityPreconditioner, LinearOperator, Preconditioner};
pub use precond::{
    c_to_r_assemble, pmhss_precondition, presb_precondition, CtoRSystem, PmhssPreconditioner,
    PresbPreconditioner,
};

use crate::error::Result;
use crate::report::{SolveReport, SolverConfig};
use crate::scalar::Real;
use crate::system::SplitSystem;

/// Unpreconditioned GMRES on `(A + iB) x = b`.
pub fn plain_gmres_solve<T: Real>(
    sys: &SplitSystem<T>,
    cfg: &SolverConfig,
) -> Result<SolveReport<Complex<T>>> {
    gmres_solve(sys, sys.rhs(), None, cfg)
}

/// GMRES on `(A + iB) x = b` left-preconditioned by PMHSS.
pub fn pmhss_gmres_solve<T: Real>(
    sys: &SplitSystem<T>,
    cfg: &SolverConfig,
) -> Result<SolveReport<Complex<T>>> {
    let mut pre = PmhssPreconditioner::new(sys, cfg.inner)?;
    gmres_solve(sys, sys.rhs(), Some(&mut pre), cfg)
}

/// GMRES on the real block form, left-preconditioned by PRESB. The solution
/// is mapped back to complex form; residual histories are those of the real
/// system, whose norms coincide with the complex ones.
pub fn presb_gmres_solve<T: Real>(
    sys: &SplitSystem<T>,
    cfg: &SolverConfig,
) -> Result<SolveReport<Complex<T>>> {
    let real = c_to_r_assemble(sys);
    let mut pre = PresbPreconditioner::new(sys, cfg.inner)?;
    let rep = gmres_solve(real.matrix(), real.rhs(), Some(&mut pre), cfg)?;
    Ok(SolveReport {
        solution: real.to_complex(&rep.solution)?,
        outer_iterations: rep.outer_iterations,
        total_inner_iterations: rep.total_inner_iterations,
        inner_iterations_per_outer: rep.inner_iterations_per_outer,
        residual_history: rep.residual_history,
        monitor_history: rep.monitor_history,
        converged: rep.converged,
        stop_reason: rep.stop_reason,
    })
}
