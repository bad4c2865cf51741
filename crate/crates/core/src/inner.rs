//! Solvers for the real SPD inner system `(A + B) z = w`.
//!
//! CG runs directly on complex vectors with the Hermitian inner product,
//! which is CG on the doubled real system `diag(M, M)` acting on the stacked
//! real and imaginary parts. The dense LU path serves as an oracle and for
//! small direct-inner comparisons.

use num_complex::Complex;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{vector, CsrMatrix, DenseMatrix, Lu};
use crate::scalar::{Real, Scalar};
use num_traits::{Float, Zero};

/// Dense direct solves refuse matrices larger than this by default.
pub const DIRECT_CAP: usize = 4096;

/// Recurrence residual is replaced by `w - M x` this often.
const RESIDUAL_REFRESH: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InnerKind {
    Cg,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerSolverConfig {
    pub kind: InnerKind,
    /// Relative residual tolerance `||w - M x|| / ||w||`.
    pub tol: f64,
    /// CG iteration cap; `None` means the system dimension.
    pub max_iter: Option<usize>,
}

impl Default for InnerSolverConfig {
    fn default() -> Self {
        Self {
            kind: InnerKind::Cg,
            tol: 1e-12,
            max_iter: None,
        }
    }
}

impl InnerSolverConfig {
    pub fn cg(tol: f64, max_iter: Option<usize>) -> Self {
        Self {
            kind: InnerKind::Cg,
            tol,
            max_iter,
        }
    }

    pub fn direct() -> Self {
        Self {
            kind: InnerKind::Direct,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "inner tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iter == Some(0) {
            return Err(Error::InvalidConfig(
                "inner max_iter must be at least 1".into(),
            ));
        }
        Ok(())
    }

    fn iteration_cap(&self, n: usize) -> usize {
        self.max_iter.unwrap_or(n).max(1)
    }
}

#[derive(Debug, Clone)]
pub struct InnerSolveResult<S: Scalar> {
    pub solution: Vec<S>,
    pub iterations: usize,
    pub final_relative_residual: S::Real,
}

/// Conjugate gradients for real SPD `m` on a vector over any field,
/// warm-started from `x0`.
///
/// Stops once `||w - M x|| / ||w|| <= cfg.tol` or after the iteration cap.
/// A zero right-hand side returns the zero vector without iterating.
pub fn cg_solve<S: Scalar>(
    m: &CsrMatrix<S::Real>,
    w: &[S],
    x0: &[S],
    cfg: &InnerSolverConfig,
) -> Result<InnerSolveResult<S>> {
    cfg.validate()?;
    let n = m.n_rows();
    check_dim("cg_solve (square)", n, m.n_cols())?;
    check_dim("cg_solve rhs", n, w.len())?;
    check_dim("cg_solve x0", n, x0.len())?;
    let zero = S::Real::zero();

    let wnorm = vector::norm(w);
    if wnorm == zero {
        return Ok(InnerSolveResult {
            solution: vector::zeros(n),
            iterations: 0,
            final_relative_residual: zero,
        });
    }
    let tol = S::Real::lit(cfg.tol);
    let cap = cfg.iteration_cap(n);

    let mut x = x0.to_vec();
    let mut q = vec![S::zero(); n];
    m.mul_vec_into(&x, &mut q);
    let mut r = vector::sub(w, &q);
    let mut rr = vector::norm_sqr(&r);
    let mut rel = rr.sqrt() / wnorm;
    if rel <= tol {
        return Ok(InnerSolveResult {
            solution: x,
            iterations: 0,
            final_relative_residual: rel,
        });
    }
    let mut p = r.clone();

    for it in 1..=cap {
        m.mul_vec_into(&p, &mut q);
        let curvature = vector::dot(&p, &q).re();
        if curvature <= zero {
            return Err(Error::NonPositiveCurvature {
                iteration: it,
                curvature: curvature.to_f64_lossy(),
            });
        }
        let alpha = rr / curvature;
        vector::axpy_real(alpha, &p, &mut x);
        if it % RESIDUAL_REFRESH == 0 {
            m.mul_vec_into(&x, &mut q);
            for ((ri, &wi), &qi) in r.iter_mut().zip(w).zip(&q) {
                *ri = wi - qi;
            }
        } else {
            vector::axpy_real(-alpha, &q, &mut r);
        }
        let rr_new = vector::norm_sqr(&r);
        rel = rr_new.sqrt() / wnorm;
        if rel <= tol {
            return Ok(InnerSolveResult {
                solution: x,
                iterations: it,
                final_relative_residual: rel,
            });
        }
        let beta = rr_new / rr;
        for (pi, &ri) in p.iter_mut().zip(&r) {
            *pi = ri + pi.scale(beta);
        }
        rr = rr_new;
    }
    Ok(InnerSolveResult {
        solution: x,
        iterations: cap,
        final_relative_residual: rel,
    })
}

/// Dense LU factor of a real sparse matrix, reusable across solves.
#[derive(Debug, Clone)]
pub struct DirectSolver<T> {
    lu: Lu<T>,
}

impl<T: Real> DirectSolver<T> {
    pub fn new(m: &CsrMatrix<T>) -> Result<Self> {
        Self::with_cap(m, DIRECT_CAP)
    }

    pub fn with_cap(m: &CsrMatrix<T>, cap: usize) -> Result<Self> {
        check_dim("direct_solve (square)", m.n_rows(), m.n_cols())?;
        if m.n_rows() > cap {
            return Err(Error::TooLarge {
                what: "direct solver",
                dim: m.n_rows(),
                cap,
            });
        }
        Ok(Self {
            lu: Lu::factor(&m.to_dense())?,
        })
    }

    pub fn solve<S: Scalar<Real = T>>(&self, w: &[S]) -> Result<Vec<S>> {
        check_dim("direct_solve rhs", self.lu.dim(), w.len())?;
        Ok(self.lu.solve_real(w))
    }
}

/// `M^{-1} w` via dense LU with partial pivoting.
pub fn direct_solve<S: Scalar>(m: &CsrMatrix<S::Real>, w: &[S]) -> Result<Vec<S>> {
    DirectSolver::new(m)?.solve(w)
}

/// Reference solution of `(A + iB) x = b` by dense complex LU; refuses
/// dimensions above `cap` with [`Error::TooLarge`].
pub fn complex_direct_solve<T: Real>(
    a: &CsrMatrix<T>,
    b: &CsrMatrix<T>,
    rhs: &[Complex<T>],
    cap: usize,
) -> Result<Vec<Complex<T>>> {
    let n = a.n_rows();
    check_dim("complex_direct_solve (square A)", n, a.n_cols())?;
    check_dim("complex_direct_solve (B rows)", n, b.n_rows())?;
    check_dim("complex_direct_solve (B cols)", n, b.n_cols())?;
    check_dim("complex_direct_solve rhs", n, rhs.len())?;
    if n > cap {
        return Err(Error::TooLarge {
            what: "complex direct oracle",
            dim: n,
            cap,
        });
    }
    let mut c = DenseMatrix::<Complex<T>>::zeros(n, n);
    for (i, j, v) in a.triplets() {
        c[(i, j)].re += v;
    }
    for (i, j, v) in b.triplets() {
        c[(i, j)].im += v;
    }
    Ok(Lu::factor(&c)?.solve(rhs))
}

/// Inner solver bound to one SPD matrix (in practice `A + B`).
#[derive(Debug, Clone)]
pub enum InnerSolver<T> {
    Cg {
        matrix: CsrMatrix<T>,
        config: InnerSolverConfig,
    },
    Direct(DirectSolver<T>),
}

impl<T: Real> InnerSolver<T> {
    pub fn new(matrix: CsrMatrix<T>, config: InnerSolverConfig) -> Result<Self> {
        config.validate()?;
        match config.kind {
            InnerKind::Cg => Ok(Self::Cg { matrix, config }),
            InnerKind::Direct => Ok(Self::Direct(DirectSolver::new(&matrix)?)),
        }
    }

    /// Solves with the given warm start; `None` means a zero initial guess.
    /// Direct solves report zero iterations.
    pub fn solve<S: Scalar<Real = T>>(
        &self,
        rhs: &[S],
        warm: Option<&[S]>,
    ) -> Result<InnerSolveResult<S>> {
        match self {
            Self::Cg { matrix, config } => {
                let zero;
                let x0 = match warm {
                    Some(w) => w,
                    None => {
                        zero = vector::zeros(rhs.len());
                        &zero[..]
                    }
                };
                cg_solve(matrix, rhs, x0, config)
            }
            Self::Direct(d) => Ok(InnerSolveResult {
                solution: d.solve(rhs)?,
                iterations: 0,
                final_relative_residual: T::zero(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    fn spd_fixture(n: usize, seed: u64) -> CsrMatrix<f64> {
        // R^T R + n I with a deterministic dense R
        let mut s = seed.wrapping_add(0x2545F4914F6CDD1D);
        let mut rnd = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let r = DenseMatrix::from_fn(n, n, |_, _| rnd());
        let g = r.transpose().matmul(&r).add_scaled(n as f64 * 0.1, &DenseMatrix::identity(n));
        CsrMatrix::from_dense(&g)
    }

    #[test]
    fn cg_identity_converges_in_one_iteration() {
        let m = CsrMatrix::<f64>::identity(4);
        let w = vec![c(1.0, -1.0), c(2.0, 0.5), c(0.0, 3.0), c(-4.0, 0.0)];
        let res = cg_solve(&m, &w, &vec![c(0.0, 0.0); 4], &InnerSolverConfig::default()).unwrap();
        assert_eq!(res.iterations, 1);
        assert!(vector::dist(&res.solution, &w) < 1e-15);
    }

    #[test]
    fn cg_warm_start_at_solution_takes_no_iterations() {
        let m = CsrMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let x = vec![c(1.0, 1.0), c(0.5, 0.0), c(0.0, 2.0)];
        let w = m.spmv(&x).unwrap();
        let res = cg_solve(&m, &w, &x, &InnerSolverConfig::default()).unwrap();
        assert_eq!(res.iterations, 0);
        assert_eq!(res.solution, x);
    }

    #[test]
    fn cg_diagonal_closed_form() {
        let m = CsrMatrix::diagonal(&[1.0, 2.0, 3.0]);
        let w = vec![c(1.0, 0.0); 3];
        let res = cg_solve(&m, &w, &vec![c(0.0, 0.0); 3], &InnerSolverConfig::default()).unwrap();
        let exact = [1.0, 0.5, 1.0 / 3.0];
        for (z, e) in res.solution.iter().zip(exact) {
            assert!((z - c(e, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn cg_zero_rhs_returns_zero() {
        let m = CsrMatrix::diagonal(&[1.0, 2.0]);
        let res = cg_solve(&m, &[c(0.0, 0.0); 2], &[c(5.0, 5.0); 2], &InnerSolverConfig::default())
            .unwrap();
        assert_eq!(res.iterations, 0);
        assert_eq!(res.solution, vec![c(0.0, 0.0); 2]);
    }

    #[test]
    fn cg_detects_indefinite_matrix() {
        let m = CsrMatrix::diagonal(&[1.0, -2.0]);
        let err = cg_solve(&m, &[c(0.0, 0.0), c(1.0, 0.0)], &[c(0.0, 0.0); 2], &InnerSolverConfig::default());
        assert!(matches!(err, Err(Error::NonPositiveCurvature { .. })));
    }

    #[test]
    fn cg_respects_iteration_cap() {
        let m = spd_fixture(30, 3);
        let w: Vec<C> = (0..30).map(|i| c(i as f64, 1.0)).collect();
        let cfg = InnerSolverConfig::cg(1e-14, Some(3));
        let res = cg_solve(&m, &w, &vec![c(0.0, 0.0); 30], &cfg).unwrap();
        assert_eq!(res.iterations, 3);
        assert!(res.final_relative_residual > 1e-14);
    }

    #[test]
    fn cg_rejects_bad_config() {
        let m = CsrMatrix::<f64>::identity(2);
        let z = [0.0, 1.0];
        assert!(cg_solve(&m, &z, &z, &InnerSolverConfig::cg(0.0, None)).is_err());
        assert!(cg_solve(&m, &z, &z, &InnerSolverConfig::cg(1e-8, Some(0))).is_err());
    }

    #[test]
    fn cg_matches_stacked_real_system() {
        // complex CG on M equals real CG on diag(M, M) applied to (re; im)
        let n = 25;
        let m = spd_fixture(n, 11);
        let w: Vec<C> = (0..n).map(|i| c((i as f64).sin(), (i as f64 * 0.7).cos())).collect();
        let cfg = InnerSolverConfig::cg(1e-13, None);
        let complex = cg_solve(&m, &w, &vec![c(0.0, 0.0); n], &cfg).unwrap();

        let stacked = CsrMatrix::from_triplets(
            2 * n,
            2 * n,
            m.triplets().chain(m.triplets().map(|(i, j, v)| (i + n, j + n, v))),
        )
        .unwrap();
        let ws: Vec<f64> = w.iter().map(|z| z.re).chain(w.iter().map(|z| z.im)).collect();
        let real = cg_solve(&stacked, &ws, &vec![0.0; 2 * n], &cfg).unwrap();
        assert_eq!(complex.iterations, real.iterations);
        for i in 0..n {
            assert!((complex.solution[i].re - real.solution[i]).abs() < 1e-13);
            assert!((complex.solution[i].im - real.solution[i + n]).abs() < 1e-13);
        }
    }

    #[test]
    fn cg_in_single_precision() {
        let m = CsrMatrix::diagonal(&[1.0f32, 4.0]);
        let res = cg_solve(&m, &[2.0f32, 2.0], &[0.0, 0.0], &InnerSolverConfig::cg(1e-6, None)).unwrap();
        assert!((res.solution[0] - 2.0).abs() < 1e-5 && (res.solution[1] - 0.5).abs() < 1e-5);
    }

    #[test]
    fn direct_identity_and_permutation() {
        let w = vec![c(1.0, 2.0), c(3.0, -1.0), c(0.0, 1.0)];
        assert_eq!(direct_solve(&CsrMatrix::identity(3), &w).unwrap(), w);
        let p = CsrMatrix::from_triplets(3, 3, [(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let x = direct_solve(&p, &w).unwrap();
        assert_eq!(p.spmv(&x).unwrap(), w);
    }

    #[test]
    fn direct_matches_cg_on_random_spd() {
        let n = 50;
        let m = spd_fixture(n, 5);
        let w: Vec<C> = (0..n).map(|i| c(1.0 / (i + 1) as f64, (i % 3) as f64)).collect();
        let x = direct_solve(&m, &w).unwrap();
        let cg = cg_solve(&m, &w, &vec![c(0.0, 0.0); n], &InnerSolverConfig::cg(1e-13, None)).unwrap();
        assert!(vector::dist(&x, &cg.solution) < 1e-10);
        let back = vector::norm(&vector::sub(&w, &m.spmv(&x).unwrap()));
        assert!(back / (m.norm_frobenius() * vector::norm(&x)) <= 1e-12);
    }

    #[test]
    fn direct_rejects_singular_and_oversized() {
        let s = CsrMatrix::from_triplets(2, 2, [(0, 0, 1.0)]).unwrap();
        assert!(matches!(direct_solve(&s, &[1.0, 1.0]), Err(Error::Singular { .. })));
        let big = CsrMatrix::<f64>::identity(10);
        assert!(matches!(DirectSolver::with_cap(&big, 5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn complex_direct_identity_and_scalar() {
        let i2 = CsrMatrix::<f64>::identity(2);
        let z2 = CsrMatrix::<f64>::zeros(2, 2);
        let b = vec![c(1.0, 2.0), c(-3.0, 0.5)];
        let x = complex_direct_solve(&i2, &z2, &b, 10).unwrap();
        assert!(vector::dist(&x, &b) < 1e-15);
        let one = CsrMatrix::identity(1);
        let x = complex_direct_solve(&one, &one, &[c(2.0, 0.0)], 10).unwrap();
        assert!((x[0] - c(1.0, -1.0)).norm() < 1e-15);
        assert!(matches!(
            complex_direct_solve(&i2, &z2, &b, 1),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn complex_direct_self_residual_on_random_instance() {
        let n = 100;
        let a = spd_fixture(n, 17);
        let b = spd_fixture(n, 18);
        let rhs: Vec<C> = (0..n).map(|i| c((i as f64 * 0.3).sin(), (i as f64).cos())).collect();
        let x = complex_direct_solve(&a, &b, &rhs, 200).unwrap();
        let ax = a.spmv(&x).unwrap();
        let bx = b.spmv(&x).unwrap();
        let r: Vec<C> = (0..n).map(|i| ax[i] + c(0.0, 1.0) * bx[i] - rhs[i]).collect();
        assert!(vector::norm(&r) <= 1e-10 * vector::norm(&rhs));
    }
}
