//! Vectors, CSR matrices, dense factorizations, QR least squares and dense
//! eigenvalue solvers.

pub mod csr;
pub mod dense;
pub mod eig;
pub mod lstsq;
pub mod vector;

pub use csr::CsrMatrix;
pub use dense::{Cholesky, DenseMatrix, Lu};
pub use eig::{dense_eig_general, dense_eig_sym, dense_eig_sym_capped, spectral_norm, DENSE_EIG_CAP};
pub use lstsq::{least_squares_qr, LstsqSolution};
