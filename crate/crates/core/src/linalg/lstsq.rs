//! Householder-QR least squares for tall-skinny systems.

use crate::error::{check_dim, Result};
use crate::linalg::dense::DenseMatrix;
use crate::linalg::vector;
use crate::scalar::{Real, Scalar};
use num_traits::{Float, One, Zero};

/// Columns whose remaining norm falls below `RANK_TOL * |R_11|` are dropped.
pub const RANK_TOL: f64 = 1e-14;

#[derive(Debug, Clone)]
pub struct LstsqSolution<S: Scalar> {
    /// One coefficient per column of `G`; dropped columns get zero.
    pub coeffs: Vec<S>,
    /// `||g - G coeffs||`, read off the transformed right-hand side.
    pub residual_norm: S::Real,
    /// Indices of the columns kept in the factorization.
    pub kept: Vec<usize>,
}

/// Minimizes `||g - G a||_2` over `a` by Householder QR.
///
/// Columns are processed oldest (index 0) first. A column whose component
/// orthogonal to the already accepted ones is below the rank tolerance is
/// dropped and its coefficient set to zero. An empty `G` yields an empty
/// coefficient vector.
pub fn least_squares_qr<S: Scalar>(g_mat: &DenseMatrix<S>, g: &[S]) -> Result<LstsqSolution<S>> {
    check_dim("least_squares_qr", g_mat.n_rows(), g.len())?;
    let m = g_mat.n_rows();
    let k = g_mat.n_cols();
    if k == 0 {
        return Ok(LstsqSolution {
            coeffs: Vec::new(),
            residual_norm: vector::norm(g),
            kept: Vec::new(),
        });
    }
    let tol = S::Real::lit(RANK_TOL).max(S::Real::epsilon());

    let mut r = g_mat.clone();
    let mut y = g.to_vec();
    let mut kept: Vec<usize> = Vec::with_capacity(k);
    let mut r11 = S::Real::zero();
    let mut v = vec![S::zero(); m];

    for j in 0..k {
        let p = kept.len();
        if p == m {
            break;
        }
        let col = &r.column(j)[p..];
        let xnorm = vector::norm(col);
        if p == 0 {
            if xnorm == S::Real::zero() {
                continue;
            }
        } else if xnorm < tol * r11 {
            continue;
        }
        // Householder vector mapping col onto alpha e_1.
        let x0 = col[0];
        let x0abs = x0.modulus();
        let phase = if x0abs > S::Real::zero() {
            x0.scale(S::Real::one() / x0abs)
        } else {
            S::one()
        };
        let alpha = -(phase.scale(xnorm));
        let vs = &mut v[..m - p];
        vs.copy_from_slice(col);
        vs[0] -= alpha;
        let vnorm2 = vector::norm_sqr(vs);
        if vnorm2 > S::Real::zero() {
            let two_over = S::Real::lit(2.0) / vnorm2;
            for c in j..k {
                let cc = &mut r.column_mut(c)[p..];
                let proj = vector::dot(vs, cc).scale(two_over);
                vector::axpy(-proj, vs, cc);
            }
            let yy = &mut y[p..];
            let proj = vector::dot(vs, yy).scale(two_over);
            vector::axpy(-proj, vs, yy);
        }
        if p == 0 {
            r11 = alpha.modulus();
        }
        kept.push(j);
    }

    // Back substitution on the accepted upper-triangular block.
    let rank = kept.len();
    let mut z = y[..rank].to_vec();
    for row in (0..rank).rev() {
        let mut s = z[row];
        for (col_pos, &c) in kept.iter().enumerate().skip(row + 1) {
            s -= r[(row, c)] * z[col_pos];
        }
        z[row] = s / r[(row, kept[row])];
    }
    let mut coeffs = vec![S::zero(); k];
    for (pos, &c) in kept.iter().enumerate() {
        coeffs[c] = z[pos];
    }
    Ok(LstsqSolution {
        coeffs,
        residual_norm: vector::norm(&y[rank..]),
        kept,
    })
}
