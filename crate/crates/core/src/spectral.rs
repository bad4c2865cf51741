//! Dense spectral checks on small instances: the `mu`-spectrum of
//! `A^-1 B`, the predicted and computed spectra of the preconditioned
//! operators, and the spectral radius of the PMHSS iteration matrix.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::inner::InnerSolverConfig;
use crate::krylov::{c_to_r_assemble, Preconditioner, PresbPreconditioner};
use crate::linalg::{dense_eig_general, dense_eig_sym_capped, Cholesky, CsrMatrix, DenseMatrix, Lu, DENSE_EIG_CAP};
use crate::scalar::{Real, Scalar};
use crate::system::SplitSystem;
use num_traits::{Float, Zero};

/// Largest complex dimension accepted by [`empirical_spectrum`].
pub const EMPIRICAL_CAP: usize = 256;

/// Computed `mu` values down to this negative size are rounding noise and
/// are read as zero.
const MU_NOISE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpectralMethod {
    /// `(A + B)^{-1} (A + iB)`. The preconditioner's extra `(1 - i)/2`
    /// factor is a global scalar that leaves GMRES iterates unchanged and
    /// is left out here.
    PmhssGmres,
    /// PRESB applied to the real block operator.
    Presb,
}

#[derive(Debug, Clone)]
pub struct SpectralReport<T: Real> {
    pub method: SpectralMethod,
    /// Eigenvalues of `A^-1 B`, ascending.
    pub mu: Vec<T>,
    /// Spectrum predicted from `mu` for `method`, sorted like `empirical_lambda`.
    pub predicted_lambda: Vec<Complex<T>>,
    pub empirical_lambda: Vec<Complex<T>>,
    /// `max |lambda_psi|` over `mu`.
    pub rho_psi: T,
    /// Largest distance between paired predicted and empirical eigenvalues.
    pub max_deviation: T,
}

/// Eigenvalues of the pencil `B v = mu A v`, ascending, from the symmetric
/// reduction `L^-1 B L^-T` with `A = L L^T`.
pub fn compute_mu<T: Real>(a: &CsrMatrix<T>, b: &CsrMatrix<T>) -> Result<Vec<T>> {
    let n = a.n_rows();
    if n > DENSE_EIG_CAP {
        return Err(Error::TooLarge {
            what: "mu spectrum",
            dim: n,
            cap: DENSE_EIG_CAP,
        });
    }
    crate::error::check_dim("compute_mu (B)", n, b.n_rows())?;
    let chol = Cholesky::factor(&a.to_dense())?;
    let bd = b.to_dense();
    // W = L^-1 B, then C = L^-1 W^T since B is symmetric
    let w_cols: Vec<Vec<T>> = (0..n).map(|j| chol.solve_lower(bd.column(j))).collect();
    let w = DenseMatrix::from_fn(n, n, |i, j| w_cols[j][i]);
    let wt = w.transpose();
    let c_cols: Vec<Vec<T>> = (0..n).map(|j| chol.solve_lower(wt.column(j))).collect();
    let half = T::lit(0.5);
    let c = DenseMatrix::from_fn(n, n, |i, j| half * (c_cols[j][i] + c_cols[i][j]));
    dense_eig_sym_capped(&c, DENSE_EIG_CAP)
}

fn checked_mu<T: Real>(mu: T) -> Result<T> {
    if mu < T::lit(-MU_NOISE) || mu.is_nan() {
        return Err(Error::NegativeMu(mu.to_f64_lossy()));
    }
    Ok(mu.max(T::zero()))
}

/// PMHSS-preconditioned eigenvalues `1 + (i - 1) mu / (mu + 1)`.
pub fn predicted_spectrum<T: Real>(mu: &[T]) -> Result<Vec<Complex<T>>> {
    mu.iter()
        .map(|&m| {
            let m = checked_mu(m)?;
            let t = m / (m + T::one());
            Ok(Complex::new(T::one() - t, t))
        })
        .collect()
}

/// Eigenvalues of the PMHSS iteration matrix, `((1 + i)/2)(1 - i mu)/(1 + mu)`.
pub fn psi_spectrum<T: Real>(mu: &[T]) -> Result<Vec<Complex<T>>> {
    let half = T::lit(0.5);
    let hi = Complex::new(half, half);
    mu.iter()
        .map(|&m| {
            let m = checked_mu(m)?;
            Ok(hi * Complex::new(T::one(), -m) / (T::one() + m))
        })
        .collect()
}

/// PRESB-preconditioned eigenvalues: `1` with multiplicity `n` and
/// `(1 + mu^2)/(1 + mu)^2` for each `mu`.
pub fn presb_predicted_spectrum<T: Real>(mu: &[T]) -> Result<Vec<Complex<T>>> {
    let mut out = Vec::with_capacity(2 * mu.len());
    for &m in mu {
        let m = checked_mu(m)?;
        let d = T::one() + m;
        out.push(Complex::new((T::one() + m * m) / (d * d), T::zero()));
        out.push(Complex::new(T::one(), T::zero()));
    }
    Ok(out)
}

pub fn spectral_radius<S: Scalar>(m: &DenseMatrix<S>) -> Result<S::Real> {
    let eig = dense_eig_general(m, DENSE_EIG_CAP)?;
    Ok(eig.iter().map(|z| z.norm()).fold(S::Real::zero(), |a, b| a.max(b)))
}

fn complex_dense<T: Real>(a: &CsrMatrix<T>, b: &CsrMatrix<T>) -> DenseMatrix<Complex<T>> {
    let n = a.n_rows();
    let mut c = DenseMatrix::<Complex<T>>::zeros(n, n);
    for (i, j, v) in a.triplets() {
        c[(i, j)].re += v;
    }
    for (i, j, v) in b.triplets() {
        c[(i, j)].im += v;
    }
    c
}

/// Dense preconditioned operator for `method`.
pub fn preconditioned_operator<T: Real>(
    sys: &SplitSystem<T>,
    method: SpectralMethod,
) -> Result<DenseMatrix<Complex<T>>> {
    let n = sys.n();
    if n > EMPIRICAL_CAP {
        return Err(Error::TooLarge {
            what: "preconditioned spectrum",
            dim: n,
            cap: EMPIRICAL_CAP,
        });
    }
    match method {
        SpectralMethod::PmhssGmres => {
            let h = sys.sum_matrix().to_dense().map(Complex::from_real);
            let lu = Lu::factor(&h)?;
            let c = complex_dense(sys.a(), sys.b());
            let cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| lu.solve(c.column(j))).collect();
            Ok(DenseMatrix::from_fn(n, n, |i, j| cols[j][i]))
        }
        SpectralMethod::Presb => {
            let real = c_to_r_assemble(sys);
            let blk = real.matrix().to_dense();
            let mut pre = PresbPreconditioner::new(sys, InnerSolverConfig::direct())?;
            let cols = (0..2 * n)
                .map(|j| pre.apply(blk.column(j)))
                .collect::<Result<Vec<Vec<T>>>>()?;
            Ok(DenseMatrix::from_fn(2 * n, 2 * n, |i, j| Complex::from_real(cols[j][i])))
        }
    }
}

fn sort_spectrum<T: Real>(v: &mut [Complex<T>]) {
    v.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Eigenvalues of the dense preconditioned operator, sorted by real part.
pub fn empirical_spectrum<T: Real>(sys: &SplitSystem<T>, method: SpectralMethod) -> Result<Vec<Complex<T>>> {
    let op = preconditioned_operator(sys, method)?;
    let mut eig = dense_eig_general(&op, 2 * EMPIRICAL_CAP)?;
    sort_spectrum(&mut eig);
    Ok(eig)
}

/// Largest distance between two spectra paired after sorting by real part.
pub fn max_sorted_deviation<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Result<T> {
    crate::error::check_dim("max_sorted_deviation", a.len(), b.len())?;
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    sort_spectrum(&mut a);
    sort_spectrum(&mut b);
    Ok(a.iter()
        .zip(&b)
        .map(|(x, y)| (x - y).norm())
        .fold(T::zero(), |p, q| p.max(q)))
}

pub fn spectral_report<T: Real>(sys: &SplitSystem<T>, method: SpectralMethod) -> Result<SpectralReport<T>> {
    let mu = compute_mu(sys.a(), sys.b())?;
    let mut predicted_lambda = match method {
        SpectralMethod::PmhssGmres => predicted_spectrum(&mu)?,
        SpectralMethod::Presb => presb_predicted_spectrum(&mu)?,
    };
    sort_spectrum(&mut predicted_lambda);
    let empirical_lambda = empirical_spectrum(sys, method)?;
    let rho_psi = psi_spectrum(&mu)?
        .iter()
        .map(|z| z.norm())
        .fold(T::zero(), |a, b| a.max(b));
    let max_deviation = max_sorted_deviation(&predicted_lambda, &empirical_lambda)?;
    Ok(SpectralReport {
        method,
        mu,
        predicted_lambda,
        empirical_lambda,
        rho_psi,
        max_deviation,
    })
}
