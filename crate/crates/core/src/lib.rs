//! Solvers for complex symmetric systems `(A + iB) x = b` with `A`
//! symmetric positive definite and `B` symmetric positive semidefinite.
//!
//! The PMHSS fixed-point iteration, its Anderson-accelerated variant, and
//! full GMRES with PMHSS or PRESB preconditioning, all built on a small
//! sparse/dense linear algebra layer generic over `f32` and `f64`.

pub mod error;
pub mod inner;
pub mod krylov;
pub mod linalg;
pub mod problems;
pub mod report;
pub mod scalar;
pub mod spectral;
pub mod splitting;
pub mod system;

pub use error::{Error, Result};
pub use inner::{
    cg_solve, complex_direct_solve, direct_solve, DirectSolver, InnerKind, InnerSolveResult,
    InnerSolver, InnerSolverConfig, DIRECT_CAP,
};
pub use krylov::{
    c_to_r_assemble, gmres_solve, plain_gmres_solve, pmhss_gmres_solve, pmhss_precondition,
    presb_gmres_solve, presb_precondition, CtoRSystem, LinearOperator, PmhssPreconditioner,
    Preconditioner, PresbPreconditioner,
};
pub use linalg::{CsrMatrix, DenseMatrix};
pub use problems::{gen_eq_motion, gen_pade, gen_rhs, gen_shifted_omega, ProblemKind, ProblemSpec, RhsSource};
pub use report::{SolveReport, SolverConfig, StopReason};
pub use scalar::{Real, Scalar};
pub use spectral::{
    compute_mu, empirical_spectrum, predicted_spectrum, psi_spectrum, spectral_report, SpectralMethod,
    SpectralReport,
};
pub use splitting::{aa_pmhss_solve, pmhss_solve, pmhss_step, Anderson};
pub use system::SplitSystem;

pub use num_complex::{Complex, Complex32, Complex64};

pub type RealSparseMatrix = CsrMatrix<f64>;
pub type ComplexVector = Vec<Complex64>;
pub type DenseComplexMatrix = DenseMatrix<Complex64>;
pub type System = SplitSystem<f64>;
pub type Report = SolveReport<Complex64>;
