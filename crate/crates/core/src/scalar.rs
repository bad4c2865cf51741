//! Scalar abstractions shared by every kernel.
//!
//! [`Real`] is the floating-point field (`f32` or `f64`) that sparse matrices
//! are stored in. [`Scalar`] is the field that vectors live in: either a
//! [`Real`] itself or a [`Complex`] over one. Every solver is written once
//! against `Scalar`, so the same GMRES drives both the complex system and its
//! real 2n-dimensional rewrite.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FromPrimitive, NumAssign};

/// Real floating-point field.
pub trait Real:
    Float
    + Scalar<Real = Self>
    + FromPrimitive
    + NumAssign
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in the real field")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field in which vectors and dense factors are stored.
pub trait Scalar:
    Copy
    + PartialEq
    + NumAssign
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + Default
    + Debug
    + Send
    + Sync
    + 'static
{
    type Real: Real;

    /// `true` for complex fields.
    const IS_COMPLEX: bool;

    fn from_real(r: Self::Real) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> Self::Real;
    fn im(self) -> Self::Real;
    /// Squared modulus.
    fn abs_sqr(self) -> Self::Real;
    /// Multiplication by a real number; for complex values this scales the
    /// real and imaginary parts independently.
    fn scale(self, r: Self::Real) -> Self;

    fn modulus(self) -> Self::Real {
        self.abs_sqr().sqrt()
    }

    /// Lift into the complex field over the same reals.
    fn to_complex(self) -> Complex<Self::Real> {
        Complex::new(self.re(), self.im())
    }
}

macro_rules! real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            type Real = $t;
            const IS_COMPLEX: bool = false;

            #[inline]
            fn from_real(r: $t) -> Self {
                r
            }
            #[inline]
            fn conj(self) -> Self {
                self
            }
            #[inline]
            fn re(self) -> $t {
                self
            }
            #[inline]
            fn im(self) -> $t {
                0.0
            }
            #[inline]
            fn abs_sqr(self) -> $t {
                self * self
            }
            #[inline]
            fn scale(self, r: $t) -> Self {
                self * r
            }
            #[inline]
            fn modulus(self) -> $t {
                self.abs()
            }
        }
    };
}

real_scalar!(f32);
real_scalar!(f64);

impl<T: Real> Scalar for Complex<T> {
    type Real = T;
    const IS_COMPLEX: bool = true;

    #[inline]
    fn from_real(r: T) -> Self {
        Complex::new(r, T::zero())
    }
    #[inline]
    fn conj(self) -> Self {
        Complex::conj(&self)
    }
    #[inline]
    fn re(self) -> T {
        self.re
    }
    #[inline]
    fn im(self) -> T {
        self.im
    }
    #[inline]
    fn abs_sqr(self) -> T {
        self.norm_sqr()
    }
    #[inline]
    fn scale(self, r: T) -> Self {
        Complex::new(self.re * r, self.im * r)
    }
    #[inline]
    fn modulus(self) -> T {
        self.norm()
    }
    #[inline]
    fn to_complex(self) -> Complex<T> {
        self
    }
}

/// Scalar fields that can be built from a complex value. Real fields keep
/// only the real part.
pub trait FromComplex: Scalar {
    fn from_complex(z: Complex<Self::Real>) -> Self;
}

impl FromComplex for f32 {
    fn from_complex(z: Complex<f32>) -> Self {
        z.re
    }
}

impl FromComplex for f64 {
    fn from_complex(z: Complex<f64>) -> Self {
        z.re
    }
}

impl<T: Real> FromComplex for Complex<T> {
    fn from_complex(z: Complex<T>) -> Self {
        z
    }
}
