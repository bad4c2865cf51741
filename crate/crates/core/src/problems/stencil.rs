//! Five-point stencil benchmarks on the unit square with `m x m` interior
//! points, `h = 1/(m+1)`.

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::scalar::Real;

fn check_grid(m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidConfig("grid size m must be at least 1".into()));
    }
    Ok(())
}

pub fn mesh_width<T: Real>(m: usize) -> T {
    T::one() / T::lit((m + 1) as f64)
}

/// Smallest eigenvalue of [`laplacian_5pt`], `4 h^-2 (1 - cos(pi h))`.
pub fn laplacian_min_eigenvalue(m: usize) -> f64 {
    let h = 1.0 / (m + 1) as f64;
    4.0 / (h * h) * (1.0 - (std::f64::consts::PI * h).cos())
}

/// `h^-2 (I (x) T + T (x) I)` with `T = tridiag(-1, 2, -1)`, lexicographic
/// ordering, dimension `m^2`.
pub fn laplacian_5pt<T: Real>(m: usize) -> Result<CsrMatrix<T>> {
    check_grid(m)?;
    let h = mesh_width::<T>(m);
    let inv_h2 = T::one() / (h * h);
    let diag = T::lit(4.0) * inv_h2;
    let off = -inv_h2;
    let n = m * m;
    let mut trip = Vec::with_capacity(5 * n);
    for row in 0..m {
        for col in 0..m {
            let k = row * m + col;
            if row > 0 {
                trip.push((k, k - m, off));
            }
            if col > 0 {
                trip.push((k, k - 1, off));
            }
            trip.push((k, k, diag));
            if col + 1 < m {
                trip.push((k, k + 1, off));
            }
            if row + 1 < m {
                trip.push((k, k + m, off));
            }
        }
    }
    CsrMatrix::from_triplets(n, n, trip)
}

/// Pade time-stepping pair: `A = L + (3 - sqrt 3)/h I`, `B = L + (3 + sqrt 3)/h I`.
pub fn pade_matrices<T: Real>(m: usize) -> Result<(CsrMatrix<T>, CsrMatrix<T>)> {
    let l = laplacian_5pt::<T>(m)?;
    let h = mesh_width::<T>(m);
    let s3 = T::lit(3.0).sqrt();
    let three = T::lit(3.0);
    let a = l.shift_diagonal((three - s3) / h);
    let b = l.shift_diagonal((three + s3) / h);
    Ok((a, b))
}

/// Shifted Helmholtz-type pair: `A = L + mu I`, `B = omega I`.
pub fn shifted_omega_matrices<T: Real>(
    m: usize,
    mu: f64,
    omega: f64,
) -> Result<(CsrMatrix<T>, CsrMatrix<T>)> {
    if !(mu >= 0.0) || !(omega >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "shifted-omega needs mu >= 0 and omega >= 0, got mu = {mu}, omega = {omega}"
        )));
    }
    let l = laplacian_5pt::<T>(m)?;
    let a = l.shift_diagonal(T::lit(mu));
    let b = CsrMatrix::diagonal(&vec![T::lit(omega); m * m]);
    Ok((a, b))
}

/// Damped equation of motion with `K = L`, `M = I`, `C_V = 10 I`, `C_H = mu L`:
/// `A = L - omega^2 I`, `B = 10 omega I + mu L`.
pub fn eq_motion_matrices<T: Real>(
    m: usize,
    omega: f64,
    mu: f64,
) -> Result<(CsrMatrix<T>, CsrMatrix<T>)> {
    if !(mu >= 0.0) || !(omega >= 0.0) {
        return Err(Error::InvalidConfig(format!(
            "equation of motion needs omega >= 0 and mu >= 0, got omega = {omega}, mu = {mu}"
        )));
    }
    check_grid(m)?;
    let lambda_min = laplacian_min_eigenvalue(m) - omega * omega;
    if !(lambda_min > 0.0) {
        return Err(Error::NotPositiveDefinite {
            context: "equation of motion A = L - omega^2 I, smallest eigenvalue",
            value: lambda_min,
        });
    }
    let l = laplacian_5pt::<T>(m)?;
    let a = l.shift_diagonal(T::lit(-omega * omega));
    let b = l.scaled(T::lit(mu)).shift_diagonal(T::lit(10.0 * omega));
    Ok((a, b))
}
