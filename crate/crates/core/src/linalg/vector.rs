//! Slice-level vector kernels.
//!
//! Vectors are plain `Vec<S>`/`&[S]`; the length is fixed by whoever
//! allocates them and every binary kernel asserts equal lengths.

use crate::scalar::Scalar;
use num_traits::{Float, One, Zero};

/// Hermitian inner product `<u, v> = sum conj(u_i) v_i`.
pub fn dot<S: Scalar>(u: &[S], v: &[S]) -> S {
    assert_eq!(u.len(), v.len(), "dot: length mismatch");
    u.iter().zip(v).map(|(&a, &b)| a.conj() * b).sum()
}

/// Squared Euclidean norm (always real and nonnegative).
pub fn norm_sqr<S: Scalar>(v: &[S]) -> S::Real {
    v.iter().map(|x| x.abs_sqr()).sum()
}

/// Euclidean norm; rescales when the plain sum of squares under- or
/// overflows.
pub fn norm<S: Scalar>(v: &[S]) -> S::Real {
    let s = norm_sqr(v);
    if s.is_normal() && s < S::Real::max_value() {
        return s.sqrt();
    }
    let big = v
        .iter()
        .map(|x| x.re().abs().max(x.im().abs()))
        .fold(S::Real::zero(), |a, b| a.max(b));
    if big == S::Real::zero() || !big.is_finite() {
        return big;
    }
    let inv = S::Real::one() / big;
    big * v.iter().map(|x| x.scale(inv).abs_sqr()).sum::<S::Real>().sqrt()
}

/// `y += a * x`
pub fn axpy<S: Scalar>(a: S, x: &[S], y: &mut [S]) {
    assert_eq!(x.len(), y.len(), "axpy: length mismatch");
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

/// `y += a * x` with real `a`.
pub fn axpy_real<S: Scalar>(a: S::Real, x: &[S], y: &mut [S]) {
    assert_eq!(x.len(), y.len(), "axpy: length mismatch");
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += xi.scale(a);
    }
}

pub fn scale_in_place<S: Scalar>(a: S, x: &mut [S]) {
    for xi in x.iter_mut() {
        *xi *= a;
    }
}

/// `u - v`
pub fn sub<S: Scalar>(u: &[S], v: &[S]) -> Vec<S> {
    assert_eq!(u.len(), v.len(), "sub: length mismatch");
    u.iter().zip(v).map(|(&a, &b)| a - b).collect()
}

/// `u + v`
pub fn add<S: Scalar>(u: &[S], v: &[S]) -> Vec<S> {
    assert_eq!(u.len(), v.len(), "add: length mismatch");
    u.iter().zip(v).map(|(&a, &b)| a + b).collect()
}

/// `||u - v||`
pub fn dist<S: Scalar>(u: &[S], v: &[S]) -> S::Real {
    assert_eq!(u.len(), v.len(), "dist: length mismatch");
    u.iter()
        .zip(v)
        .map(|(&a, &b)| (a - b).abs_sqr())
        .sum::<S::Real>()
        .sqrt()
}

pub fn zeros<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}
