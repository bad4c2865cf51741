use num_complex::Complex;

use crate::error::Result;
use crate::linalg::CsrMatrix;
use crate::scalar::{Real, Scalar};
use crate::system::SplitSystem;

/// A square linear map `x -> C x`.
pub trait LinearOperator<S: Scalar> {
    fn dim(&self) -> usize;
    fn apply(&self, x: &[S]) -> Vec<S>;
}

impl<S: Scalar> LinearOperator<S> for CsrMatrix<S::Real> {
    fn dim(&self) -> usize {
        self.n_rows()
    }

    fn apply(&self, x: &[S]) -> Vec<S> {
        let mut y = vec![S::zero(); self.n_rows()];
        self.mul_vec_into(x, &mut y);
        y
    }
}

impl<T: Real> LinearOperator<Complex<T>> for SplitSystem<T> {
    fn dim(&self) -> usize {
        self.n()
    }

    fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        SplitSystem::apply(self, x)
    }
}

/// Left preconditioner `r -> M^{-1} r`.
///
/// Implementations count the inner iterations they spend so drivers can
/// attribute work to outer steps.
pub trait Preconditioner<S: Scalar> {
    fn apply(&mut self, r: &[S]) -> Result<Vec<S>>;

    /// Cumulative inner iterations over all applications so far.
    fn inner_iterations(&self) -> usize;
}

/// `M = I`.
#[derive(Debug, Default, Clone, Copy)]
pub struct IdentityPreconditioner;

impl<S: Scalar> Preconditioner<S> for IdentityPreconditioner {
    fn apply(&mut self, r: &[S]) -> Result<Vec<S>> {
        Ok(r.to_vec())
    }

    fn inner_iterations(&self) -> usize {
        0
    }
}
