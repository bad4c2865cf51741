//! Small dense matrices and their direct factorizations.
//!
//! Only used for tall-skinny least-squares factors, direct-solve oracles and
//! spectral verification, so everything here is straightforward O(n^3).

use std::ops::{Index, IndexMut};

use crate::error::{check_dim, Error, Result};
use crate::scalar::{Real, Scalar};
use num_traits::{Float, FromPrimitive, Zero};

/// Column-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    n_rows: usize,
    n_cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            data: vec![S::zero(); n_rows * n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for j in 0..n_cols {
            for i in 0..n_rows {
                data.push(f(i, j));
            }
        }
        Self {
            n_rows,
            n_cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(n_rows: usize, columns: &[&[S]]) -> Self {
        let mut data = Vec::with_capacity(n_rows * columns.len());
        for c in columns {
            assert_eq!(c.len(), n_rows, "column length mismatch");
            data.extend_from_slice(c);
        }
        Self {
            n_rows,
            n_cols: columns.len(),
            data,
        }
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        Self::from_fn(n_rows, n_cols, |i, j| rows[i][j])
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn column(&self, j: usize) -> &[S] {
        &self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn column_mut(&mut self, j: usize) -> &mut [S] {
        &mut self.data[j * self.n_rows..(j + 1) * self.n_rows]
    }

    pub fn map<R: Scalar>(&self, f: impl Fn(S) -> R) -> DenseMatrix<R> {
        DenseMatrix {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self.data.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n_cols, self.n_rows, |i, j| self[(j, i)])
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.n_cols, "dense mul_vec: length mismatch");
        let mut y = vec![S::zero(); self.n_rows];
        for (j, &xj) in x.iter().enumerate() {
            for (yi, &a) in y.iter_mut().zip(self.column(j)) {
                *yi += a * xj;
            }
        }
        y
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n_cols, other.n_rows, "matmul: inner dimension mismatch");
        let mut out = Self::zeros(self.n_rows, other.n_cols);
        for j in 0..other.n_cols {
            let col = self.mul_vec(other.column(j));
            out.column_mut(j).copy_from_slice(&col);
        }
        out
    }

    pub fn scaled(&self, a: S) -> Self {
        self.map(|v| v * a)
    }

    /// `self + a * other`
    pub fn add_scaled(&self, a: S, other: &Self) -> Self {
        assert_eq!((self.n_rows, self.n_cols), (other.n_rows, other.n_cols));
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&x, &y)| x + a * y)
                .collect(),
        }
    }

    pub fn max_abs(&self) -> S::Real {
        self.data
            .iter()
            .map(|v| v.modulus())
            .fold(S::Real::zero(), S::Real::max)
    }

    pub fn norm_frobenius(&self) -> S::Real {
        self.data.iter().map(|v| v.abs_sqr()).sum::<S::Real>().sqrt()
    }

    /// Largest `|a_ij - conj(a_ji)|`.
    pub fn hermitian_deviation(&self) -> S::Real {
        if !self.is_square() {
            return S::Real::infinity();
        }
        let mut dev = S::Real::zero();
        for j in 0..self.n_cols {
            for i in 0..j {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).modulus());
            }
        }
        dev
    }
}

impl<S> Index<(usize, usize)> for DenseMatrix<S> {
    type Output = S;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &S {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &self.data[j * self.n_rows + i]
    }
}

impl<S> IndexMut<(usize, usize)> for DenseMatrix<S> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        &mut self.data[j * self.n_rows + i]
    }
}

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu<S> {
    lu: DenseMatrix<S>,
    perm: Vec<usize>,
}

impl<S: Scalar> Lu<S> {
    pub fn factor(a: &DenseMatrix<S>) -> Result<Self> {
        check_dim("lu (square)", a.n_rows(), a.n_cols())?;
        let n = a.n_rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let eps = S::Real::epsilon() * S::Real::from_usize(n.max(1)).unwrap();
        let threshold = eps * a.max_abs();
        for k in 0..n {
            let (p, pmax) = (k..n)
                .map(|i| (i, lu[(i, k)].modulus()))
                .fold((k, S::Real::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if pmax <= threshold || pmax == S::Real::zero() {
                return Err(Error::Singular { pivot: k, dim: n });
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let inv = S::one() / lu[(k, k)];
            for i in k + 1..n {
                lu[(i, k)] *= inv;
            }
            for j in k + 1..n {
                let ukj = lu[(k, j)];
                if ukj == S::zero() {
                    continue;
                }
                for i in k + 1..n {
                    let lik = lu[(i, k)];
                    lu[(i, j)] -= lik * ukj;
                }
            }
        }
        Ok(Self { lu, perm })
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn solve(&self, b: &[S]) -> Vec<S> {
        self.solve_with(b, |f, v| f * v)
    }

    /// Solves with a right-hand side from a field `V` that the factor's
    /// field acts on through `mul`.
    fn solve_with<V: Scalar>(&self, b: &[V], mul: impl Fn(S, V) -> V) -> Vec<V> {
        let n = self.dim();
        assert_eq!(b.len(), n, "lu solve: length mismatch");
        let mut x: Vec<V> = self.perm.iter().map(|&p| b[p]).collect();
        for j in 0..n {
            let xj = x[j];
            for i in j + 1..n {
                x[i] -= mul(self.lu[(i, j)], xj);
            }
        }
        for j in (0..n).rev() {
            let xj = x[j];
            let piv = S::one() / self.lu[(j, j)];
            let xj = mul(piv, xj);
            x[j] = xj;
            for i in 0..j {
                x[i] -= mul(self.lu[(i, j)], xj);
            }
        }
        x
    }

    /// Explicit inverse, column by column.
    pub fn inverse(&self) -> DenseMatrix<S> {
        let n = self.dim();
        let mut inv = DenseMatrix::zeros(n, n);
        let mut e = vec![S::zero(); n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = S::zero());
            e[j] = S::one();
            let col = self.solve(&e);
            inv.column_mut(j).copy_from_slice(&col);
        }
        inv
    }
}

impl<T: Real> Lu<T> {
    /// Applies a real factorization to a vector over any field built on the
    /// same reals (real and imaginary parts are solved independently).
    pub fn solve_real<V: Scalar<Real = T>>(&self, b: &[V]) -> Vec<V> {
        self.solve_with(b, |f, v| v.scale(f))
    }
}

/// Dense Cholesky factor `A = L L^T` of a real SPD matrix.
#[derive(Debug, Clone)]
pub struct Cholesky<T> {
    l: DenseMatrix<T>,
}

impl<T: Real> Cholesky<T> {
    pub fn factor(a: &DenseMatrix<T>) -> Result<Self> {
        check_dim("cholesky (square)", a.n_rows(), a.n_cols())?;
        let n = a.n_rows();
        let mut l = DenseMatrix::zeros(n, n);
        for j in 0..n {
            let mut d = a[(j, j)];
            for k in 0..j {
                d -= l[(j, k)] * l[(j, k)];
            }
            if d <= T::zero() || !d.is_finite() {
                return Err(Error::NotPositiveDefinite {
                    context: "cholesky pivot",
                    value: d.to_f64_lossy(),
                });
            }
            let d = d.sqrt();
            l[(j, j)] = d;
            for i in j + 1..n {
                let mut s = a[(i, j)];
                for k in 0..j {
                    s -= l[(i, k)] * l[(j, k)];
                }
                l[(i, j)] = s / d;
            }
        }
        Ok(Self { l })
    }

    pub fn lower(&self) -> &DenseMatrix<T> {
        &self.l
    }

    /// Solves `L y = b`.
    pub fn solve_lower(&self, b: &[T]) -> Vec<T> {
        let n = b.len();
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= self.l[(i, k)] * y[k];
            }
            y[i] = s / self.l[(i, i)];
        }
        y
    }
}
