use num_complex::Complex;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{dense_eig_sym, vector, CsrMatrix};
use crate::scalar::Real;

/// The complex-symmetric system `(A + iB) x = b` kept as its real pair.
///
/// `A` is symmetric positive definite and `B` symmetric positive
/// semidefinite. Symmetry is checked on construction; definiteness can be
/// checked densely on small instances with [`SplitSystem::check_definiteness`].
#[derive(Debug, Clone)]
pub struct SplitSystem<T: Real> {
    a: CsrMatrix<T>,
    b: CsrMatrix<T>,
    rhs: Vec<Complex<T>>,
}

impl<T: Real> SplitSystem<T> {
    pub fn new(a: CsrMatrix<T>, b: CsrMatrix<T>, rhs: Vec<Complex<T>>) -> Result<Self> {
        let n = a.n_rows();
        check_dim("SplitSystem: A square", n, a.n_cols())?;
        check_dim("SplitSystem: B rows", n, b.n_rows())?;
        check_dim("SplitSystem: B cols", n, b.n_cols())?;
        check_dim("SplitSystem: rhs", n, rhs.len())?;
        for m in [&a, &b] {
            let dev = m.symmetry_deviation();
            if dev > T::lit(1e-12) * m.norm_inf().max(T::one()) {
                return Err(Error::NotSymmetric {
                    deviation: dev.to_f64_lossy(),
                });
            }
        }
        Ok(Self { a, b, rhs })
    }

    pub fn n(&self) -> usize {
        self.rhs.len()
    }

    pub fn a(&self) -> &CsrMatrix<T> {
        &self.a
    }

    pub fn b(&self) -> &CsrMatrix<T> {
        &self.b
    }

    pub fn rhs(&self) -> &[Complex<T>] {
        &self.rhs
    }

    pub fn with_rhs(&self, rhs: Vec<Complex<T>>) -> Result<Self> {
        check_dim("SplitSystem::with_rhs", self.n(), rhs.len())?;
        Ok(Self {
            a: self.a.clone(),
            b: self.b.clone(),
            rhs,
        })
    }

    pub fn rhs_norm(&self) -> T {
        vector::norm(&self.rhs)
    }

    /// `A + B`, the real SPD matrix of every inner solve.
    pub fn sum_matrix(&self) -> CsrMatrix<T> {
        self.a.add(&self.b).expect("A and B share dimensions")
    }

    /// `(A + iB) x`
    pub fn apply(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        let mut ax = vec![Complex::new(T::zero(), T::zero()); self.n()];
        let mut bx = ax.clone();
        self.a.mul_vec_into(x, &mut ax);
        self.b.mul_vec_into(x, &mut bx);
        ax.iter()
            .zip(&bx)
            .map(|(p, q)| Complex::new(p.re - q.im, p.im + q.re))
            .collect()
    }

    /// `b - (A + iB) x`
    pub fn residual(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        vector::sub(&self.rhs, &self.apply(x))
    }

    /// `||b - (A + iB) x|| / ||b||`
    pub fn relative_residual(&self, x: &[Complex<T>]) -> T {
        let bn = self.rhs_norm();
        let rn = vector::norm(&self.residual(x));
        if bn == T::zero() {
            rn
        } else {
            rn / bn
        }
    }

    /// Dense check that `A` is positive definite and `B` positive
    /// semidefinite (to `-1e-10 * ||B||`). Returns `(lambda_min(A), lambda_min(B))`.
    pub fn check_definiteness(&self) -> Result<(T, T)> {
        let ea = dense_eig_sym(&self.a.to_dense())?;
        let eb = dense_eig_sym(&self.b.to_dense())?;
        let amin = ea.first().copied().unwrap_or_else(T::one);
        let bmin = eb.first().copied().unwrap_or_else(T::zero);
        if amin <= T::zero() {
            return Err(Error::NotPositiveDefinite {
                context: "lambda_min(A)",
                value: amin.to_f64_lossy(),
            });
        }
        let bscale = eb.last().map_or(T::one(), |v| v.abs().max(T::one()));
        if bmin < -T::lit(1e-10) * bscale {
            return Err(Error::NotPositiveDefinite {
                context: "lambda_min(B)",
                value: bmin.to_f64_lossy(),
            });
        }
        Ok((amin, bmin))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn rejects_mismatched_and_asymmetric_inputs() {
        let i2 = CsrMatrix::<f64>::identity(2);
        let i3 = CsrMatrix::<f64>::identity(3);
        assert!(SplitSystem::new(i2.clone(), i3, vec![C::new(1.0, 0.0); 2]).is_err());
        assert!(SplitSystem::new(i2.clone(), i2.clone(), vec![C::new(1.0, 0.0); 3]).is_err());
        let asym = CsrMatrix::from_triplets(2, 2, [(0, 0, 1.0), (1, 1, 1.0), (0, 1, 0.5)]).unwrap();
        assert!(matches!(
            SplitSystem::new(asym, i2, vec![C::new(1.0, 0.0); 2]),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn apply_matches_complex_arithmetic() {
        let a = CsrMatrix::from_triplets(2, 2, [(0, 0, 2.0), (1, 1, 1.0)]).unwrap();
        let b = CsrMatrix::from_triplets(2, 2, [(0, 1, 1.0), (1, 0, 1.0)]).unwrap();
        let sys = SplitSystem::new(a, b, vec![C::new(0.0, 0.0); 2]).unwrap();
        let x = [C::new(1.0, 1.0), C::new(0.0, 2.0)];
        let y = sys.apply(&x);
        let i = C::new(0.0, 1.0);
        assert_eq!(y[0], 2.0 * x[0] + i * x[1]);
        assert_eq!(y[1], x[1] + i * x[0]);
    }

    #[test]
    fn definiteness_check() {
        let a = CsrMatrix::diagonal(&[1.0, 2.0]);
        let b = CsrMatrix::diagonal(&[0.0, 3.0]);
        let sys = SplitSystem::new(a.clone(), b, vec![C::new(1.0, 0.0); 2]).unwrap();
        let (amin, bmin) = sys.check_definiteness().unwrap();
        assert_eq!((amin, bmin), (1.0, 0.0));
        let bad = SplitSystem::new(a, CsrMatrix::diagonal(&[-1.0, 1.0]), vec![C::new(1.0, 0.0); 2])
            .unwrap();
        assert!(bad.check_definiteness().is_err());
    }
}
