//! Dense eigenvalue solvers for verification-sized problems.
//!
//! - real symmetric: cyclic Jacobi rotations
//! - general complex: Householder reduction to Hessenberg form followed by
//!   single-shift (Wilkinson) QR iteration with deflation

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::dense::DenseMatrix;
use crate::scalar::{Real, Scalar};
use num_traits::{Float, Zero};

/// Default dimension cap for dense eigenvalue work.
pub const DENSE_EIG_CAP: usize = 512;

const MAX_JACOBI_SWEEPS: usize = 100;

/// All eigenvalues of a real symmetric matrix, ascending.
pub fn dense_eig_sym<T: Real>(m: &DenseMatrix<T>) -> Result<Vec<T>> {
    dense_eig_sym_capped(m, DENSE_EIG_CAP)
}

pub fn dense_eig_sym_capped<T: Real>(m: &DenseMatrix<T>, cap: usize) -> Result<Vec<T>> {
    let n = m.n_rows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op: "dense_eig_sym (square)",
            expected: n,
            got: m.n_cols(),
        });
    }
    if n > cap {
        return Err(Error::TooLarge {
            what: "symmetric eigensolver",
            dim: n,
            cap,
        });
    }
    let scale = m.max_abs();
    let dev = m.hermitian_deviation();
    if dev > T::lit(1e-12) * scale.max(T::one()) {
        return Err(Error::NotSymmetric {
            deviation: dev.to_f64_lossy(),
        });
    }

    let mut a = m.clone();
    // symmetrize exactly so rotations see a consistent matrix
    for j in 0..n {
        for i in 0..j {
            let v = (a[(i, j)] + a[(j, i)]) * T::lit(0.5);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let total = a.norm_frobenius();
    let stop = T::epsilon() * total;

    for _ in 0..MAX_JACOBI_SWEEPS {
        let off: T = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum::<T>()
            .sqrt();
        if off <= stop || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let app = a[(p, p)];
                let aqq = a[(q, q)];
                let theta = (aqq - app) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
            }
        }
    }
    let mut eig: Vec<T> = (0..n).map(|i| a[(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    Ok(eig)
}

/// All eigenvalues of a general square matrix over any scalar field.
pub fn dense_eig_general<S: Scalar>(m: &DenseMatrix<S>, cap: usize) -> Result<Vec<Complex<S::Real>>> {
    let n = m.n_rows();
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            op: "dense_eig_general (square)",
            expected: n,
            got: m.n_cols(),
        });
    }
    if n > cap {
        return Err(Error::TooLarge {
            what: "general eigensolver",
            dim: n,
            cap,
        });
    }
    let mut h = m.map(|v| v.to_complex());
    hessenberg_reduce(&mut h);
    hessenberg_qr_eigenvalues(h)
}

fn hessenberg_reduce<T: Real>(h: &mut DenseMatrix<Complex<T>>) {
    let n = h.n_rows();
    if n < 3 {
        return;
    }
    let mut v = vec![Complex::new(T::zero(), T::zero()); n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let x: Vec<Complex<T>> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if xnorm == T::zero() {
            continue;
        }
        let x0abs = x[0].norm();
        let phase = if x0abs > T::zero() {
            x[0] / x0abs
        } else {
            Complex::new(T::one(), T::zero())
        };
        let alpha = -phase * xnorm;
        let vs = &mut v[..len];
        vs.copy_from_slice(&x);
        vs[0] -= alpha;
        let vn2 = vs.iter().map(|z| z.norm_sqr()).sum::<T>();
        if vn2 == T::zero() {
            continue;
        }
        let beta = T::lit(2.0) / vn2;
        // left: rows k+1.., columns k..
        for j in k..n {
            let mut s = Complex::new(T::zero(), T::zero());
            for (t, vi) in vs.iter().enumerate() {
                s += vi.conj() * h[(k + 1 + t, j)];
            }
            let s = s * beta;
            for (t, vi) in vs.iter().enumerate() {
                h[(k + 1 + t, j)] -= vi * s;
            }
        }
        // right: all rows, columns k+1..
        for i in 0..n {
            let mut s = Complex::new(T::zero(), T::zero());
            for (t, vi) in vs.iter().enumerate() {
                s += h[(i, k + 1 + t)] * vi;
            }
            let s = s * beta;
            for (t, vi) in vs.iter().enumerate() {
                h[(i, k + 1 + t)] -= s * vi.conj();
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex::new(T::zero(), T::zero());
        }
    }
}

fn wilkinson_shift<T: Real>(
    a: Complex<T>,
    b: Complex<T>,
    c: Complex<T>,
    d: Complex<T>,
) -> Complex<T> {
    let half = T::lit(0.5);
    let tr = (a + d) * half;
    let disc = ((a - d) * half * ((a - d) * half) + b * c).sqrt();
    let l1 = tr + disc;
    let l2 = tr - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

fn hessenberg_qr_eigenvalues<T: Real>(mut h: DenseMatrix<Complex<T>>) -> Result<Vec<Complex<T>>> {
    let n = h.n_rows();
    let zero = Complex::new(T::zero(), T::zero());
    let mut eig = vec![zero; n];
    if n == 0 {
        return Ok(eig);
    }
    let eps = T::epsilon();
    let hnorm = h.norm_frobenius();
    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total_iter = 0usize;
    let max_total = 100 * n.max(10);
    let mut cs: Vec<(Complex<T>, Complex<T>)> = Vec::with_capacity(n);

    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // locate the active unreduced block l..=hi
        let mut l = hi;
        while l > 0 {
            let sub = h[(l, l - 1)].norm();
            let mut diag = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if diag == T::zero() {
                diag = hnorm;
            }
            if sub <= eps * diag {
                h[(l, l - 1)] = zero;
                break;
            }
            l -= 1;
        }
        if l == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total_iter += 1;
        if total_iter > max_total {
            return Err(Error::EigenNoConvergence { dim: n });
        }
        let mut shift = wilkinson_shift(
            h[(hi - 1, hi - 1)],
            h[(hi - 1, hi)],
            h[(hi, hi - 1)],
            h[(hi, hi)],
        );
        if iter % 11 == 0 {
            // exceptional shift to break cycles
            shift = h[(hi, hi)] + Complex::new(h[(hi, hi - 1)].norm() * T::lit(0.75), T::zero());
        }

        for k in l..=hi {
            h[(k, k)] -= shift;
        }
        cs.clear();
        for k in l..hi {
            let a = h[(k, k)];
            let b = h[(k + 1, k)];
            let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
            let (c, s) = if r == T::zero() {
                (Complex::new(T::one(), T::zero()), zero)
            } else {
                (a / r, b / r)
            };
            cs.push((c, s));
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c.conj() * x + s.conj() * y;
                h[(k + 1, j)] = -s * x + c * y;
            }
        }
        for (idx, &(c, s)) in cs.iter().enumerate() {
            let k = l + idx;
            let top = (k + 2).min(hi);
            for i in l..=top {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s;
                h[(i, k + 1)] = -x * s.conj() + y * c.conj();
            }
        }
        for k in l..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(eig)
}

/// Spectral norm `||M||_2` of a dense matrix, via the symmetric real
/// embedding of `M^H M`.
pub fn spectral_norm<S: Scalar>(m: &DenseMatrix<S>) -> Result<S::Real> {
    let gram = m.conj_transpose().matmul(m);
    let k = gram.n_rows();
    let emb = if S::IS_COMPLEX {
        // X + iY  ->  [[X, -Y], [Y, X]]
        DenseMatrix::from_fn(2 * k, 2 * k, |i, j| {
            let z = gram[(i % k, j % k)];
            match (i < k, j < k) {
                (true, true) | (false, false) => z.re(),
                (true, false) => -z.im(),
                (false, true) => z.im(),
            }
        })
    } else {
        gram.map(|z| z.re())
    };
    let eig = dense_eig_sym_capped(&emb, usize::MAX)?;
    Ok(eig
        .last()
        .copied()
        .unwrap_or_else(S::Real::zero)
        .max(S::Real::zero())
        .sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C;

    #[test]
    fn jacobi_diagonal() {
        let m = DenseMatrix::from_rows(&[
            vec![3.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 2.0],
        ]);
        assert_eq!(dense_eig_sym(&m).unwrap(), vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn jacobi_two_by_two() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = dense_eig_sym(&m).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-14 && (e[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn jacobi_identity() {
        let e = dense_eig_sym(&DenseMatrix::<f64>::identity(5)).unwrap();
        assert_eq!(e, vec![1.0; 5]);
    }

    #[test]
    fn jacobi_rejects_asymmetric() {
        let m = DenseMatrix::from_rows(&[vec![2.0, 1.0], vec![0.0, 2.0]]);
        assert!(matches!(dense_eig_sym(&m), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn jacobi_trace_and_positivity_on_spd() {
        // tridiag(-1, 2, -1): eigenvalues 2 - 2 cos(k pi / (n+1))
        let n = 12;
        let m = DenseMatrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        });
        let e = dense_eig_sym(&m).unwrap();
        let trace: f64 = e.iter().sum();
        assert!((trace - 2.0 * n as f64).abs() < 1e-10 * 2.0 * n as f64);
        for (k, ev) in e.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!(*ev > 0.0);
            assert!((ev - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn general_eigenvalues_of_rotation_and_triangular() {
        let rot = DenseMatrix::<f64>::from_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]);
        let mut e = dense_eig_general(&rot, 10).unwrap();
        e.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((e[0] - C::new(0.0, -1.0)).norm() < 1e-14);
        assert!((e[1] - C::new(0.0, 1.0)).norm() < 1e-14);

        let tri = DenseMatrix::from_rows(&[
            vec![C::new(1.0, 1.0), C::new(5.0, 0.0), C::new(0.0, 2.0)],
            vec![C::new(0.0, 0.0), C::new(-2.0, 0.5), C::new(1.0, 0.0)],
            vec![C::new(0.0, 0.0), C::new(0.0, 0.0), C::new(3.0, 0.0)],
        ]);
        let mut e = dense_eig_general(&tri, 10).unwrap();
        e.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((e[0] - C::new(-2.0, 0.5)).norm() < 1e-12);
        assert!((e[1] - C::new(1.0, 1.0)).norm() < 1e-12);
        assert!((e[2] - C::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn general_eigenvalues_sum_to_trace_on_dense_complex() {
        let n = 30;
        let mut s = 12345u64;
        let mut rnd = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let m = DenseMatrix::from_fn(n, n, |_, _| C::new(rnd(), rnd()));
        let e = dense_eig_general(&m, 100).unwrap();
        let trace: C = (0..n).map(|i| m[(i, i)]).sum();
        let sum: C = e.iter().sum();
        assert!((trace - sum).norm() < 1e-10);
        // every eigenvalue makes M - lambda I singular: smallest singular value ~ 0
        for &l in &e {
            let shifted = DenseMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    m[(i, j)] - l
                } else {
                    m[(i, j)]
                }
            });
            assert!(crate::linalg::dense::Lu::factor(&shifted)
                .map(|lu| {
                    let inv = lu.inverse();
                    inv.max_abs() > 1e8
                })
                .unwrap_or(true));
        }
    }

    #[test]
    fn spectral_norm_of_diagonal_complex() {
        let m = DenseMatrix::from_rows(&[
            vec![C::new(0.0, 3.0), C::new(0.0, 0.0)],
            vec![C::new(0.0, 0.0), C::new(1.0, 1.0)],
        ]);
        assert!((spectral_norm(&m).unwrap() - 3.0).abs() < 1e-14);
    }
}
