//! PMHSS and PRESB preconditioners, and the real block form of the complex
//! system that PRESB acts on.

use num_complex::Complex;

use crate::error::{check_dim, Result};
use crate::inner::{InnerSolver, InnerSolverConfig};
use crate::krylov::operator::Preconditioner;
use crate::linalg::{vector, CsrMatrix};
use crate::scalar::Real;
use crate::system::SplitSystem;

/// `((1 - i)/2) (A + B)^{-1} q`, the inner solve started from zero.
///
/// Returns the preconditioned vector and the inner iterations spent.
pub fn pmhss_precondition<T: Real>(
    sum_solver: &InnerSolver<T>,
    q: &[Complex<T>],
) -> Result<(Vec<Complex<T>>, usize)> {
    let res = sum_solver.solve(q, None)?;
    let half = T::lit(0.5);
    let scale = Complex::new(half, -half);
    Ok((
        res.solution.into_iter().map(|z| scale * z).collect(),
        res.iterations,
    ))
}

/// Left PMHSS preconditioner for `(A + iB) x = b`.
///
/// Every application starts the inner solve from zero: the previous outer
/// iterate has no meaning as a guess for a Krylov direction.
#[derive(Debug, Clone)]
pub struct PmhssPreconditioner<T: Real> {
    solver: InnerSolver<T>,
    iterations: usize,
}

impl<T: Real> PmhssPreconditioner<T> {
    pub fn new(sys: &SplitSystem<T>, inner: InnerSolverConfig) -> Result<Self> {
        Ok(Self {
            solver: InnerSolver::new(sys.sum_matrix(), inner)?,
            iterations: 0,
        })
    }
}

impl<T: Real> Preconditioner<Complex<T>> for PmhssPreconditioner<T> {
    fn apply(&mut self, r: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        let (z, its) = pmhss_precondition(&self.solver, r)?;
        self.iterations += its;
        Ok(z)
    }

    fn inner_iterations(&self) -> usize {
        self.iterations
    }
}

/// The complex system rewritten over the reals:
///
/// ```text
/// [ A  -B ] [ Re x ]   [ Re b ]
/// [ B   A ] [ Im x ] = [ Im b ]
/// ```
#[derive(Debug, Clone)]
pub struct CtoRSystem<T: Real> {
    n: usize,
    matrix: CsrMatrix<T>,
    rhs: Vec<T>,
}

impl<T: Real> CtoRSystem<T> {
    /// Half the block dimension, i.e. the complex dimension.
    pub fn half_dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CsrMatrix<T> {
        &self.matrix
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    /// Maps a stacked `(x, y)` back to `x + iy`.
    pub fn to_complex(&self, v: &[T]) -> Result<Vec<Complex<T>>> {
        check_dim("CtoRSystem::to_complex", 2 * self.n, v.len())?;
        let (re, im) = v.split_at(self.n);
        Ok(re.iter().zip(im).map(|(&a, &b)| Complex::new(a, b)).collect())
    }

    /// Checks that the upper-right block is the negated lower-left block.
    pub fn has_block_structure(&self) -> bool {
        let n = self.n;
        self.matrix.triplets().all(|(i, j, v)| {
            if i < n && j >= n {
                self.matrix.get(i + n, j - n) == -v
            } else if i >= n && j < n {
                self.matrix.get(i - n, j + n) == -v
            } else {
                true
            }
        })
    }
}

/// Assembles the real `2n x 2n` block form and the stacked right-hand side.
pub fn c_to_r_assemble<T: Real>(sys: &SplitSystem<T>) -> CtoRSystem<T> {
    let n = sys.n();
    let mut trip = Vec::with_capacity(2 * (sys.a().nnz() + sys.b().nnz()));
    for (i, j, v) in sys.a().triplets() {
        trip.push((i, j, v));
        trip.push((i + n, j + n, v));
    }
    for (i, j, v) in sys.b().triplets() {
        trip.push((i, j + n, -v));
        trip.push((i + n, j, v));
    }
    let matrix = CsrMatrix::from_triplets(2 * n, 2 * n, trip)
        .expect("block indices lie inside the 2n x 2n range");
    let mut rhs = Vec::with_capacity(2 * n);
    rhs.extend(sys.rhs().iter().map(|b| b.re));
    rhs.extend(sys.rhs().iter().map(|b| b.im));
    CtoRSystem { n, matrix, rhs }
}

/// One PRESB application to the residual halves `(p, q)`:
///
/// ```text
/// H h = p + q,   H y = q - B h,   x = h - y
/// ```
///
/// with `H = A + B`, both solves from zero. Returns `(x, y)` and the inner
/// iterations spent. This is the exact inverse of `[[A, -B], [B, A + 2B]]`.
pub fn presb_precondition<T: Real>(
    h_solver: &InnerSolver<T>,
    b: &CsrMatrix<T>,
    p: &[T],
    q: &[T],
) -> Result<(Vec<T>, Vec<T>, usize)> {
    let n = b.n_rows();
    check_dim("presb_precondition p", n, p.len())?;
    check_dim("presb_precondition q", n, q.len())?;
    let first = h_solver.solve(&vector::add(p, q), None)?;
    let h = first.solution;
    let mut bh = vec![T::zero(); n];
    b.mul_vec_into(&h, &mut bh);
    let second = h_solver.solve(&vector::sub(q, &bh), None)?;
    let y = second.solution;
    let x = vector::sub(&h, &y);
    Ok((x, y, first.iterations + second.iterations))
}

/// PRESB as a left preconditioner on the stacked real system.
#[derive(Debug, Clone)]
pub struct PresbPreconditioner<T: Real> {
    solver: InnerSolver<T>,
    b: CsrMatrix<T>,
    iterations: usize,
}

impl<T: Real> PresbPreconditioner<T> {
    pub fn new(sys: &SplitSystem<T>, inner: InnerSolverConfig) -> Result<Self> {
        Ok(Self {
            solver: InnerSolver::new(sys.sum_matrix(), inner)?,
            b: sys.b().clone(),
            iterations: 0,
        })
    }
}

impl<T: Real> Preconditioner<T> for PresbPreconditioner<T> {
    fn apply(&mut self, r: &[T]) -> Result<Vec<T>> {
        let n = self.b.n_rows();
        check_dim("PRESB residual", 2 * n, r.len())?;
        let (p, q) = r.split_at(n);
        let (mut x, y, its) = presb_precondition(&self.solver, &self.b, p, q)?;
        self.iterations += its;
        x.extend(y);
        Ok(x)
    }

    fn inner_iterations(&self) -> usize {
        self.iterations
    }
}
