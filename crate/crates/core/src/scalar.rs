//! Scalar abstraction shared by every evaluator.
//!
//! All math in this crate is written against [`Real`], so the same code runs
//! in `f32` or `f64` (and any other IEEE-like float that implements the
//! `num-traits` contracts).

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar usable as the real part of a [`Complex`].
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Lossy conversion from an integer.
    #[inline]
    fn int(n: i64) -> Self {
        Self::from_i64(n).expect("integer representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Shorthand for building a complex number from two `f64` literals.
#[inline]
pub fn cplx<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `true` when both components are finite.
#[inline]
pub fn is_finite<T: Real>(z: Complex<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Lossy widening to `Complex<f64>`, used for error payloads and reports.
#[inline]
pub fn to_c64<T: Real>(z: Complex<T>) -> Complex<f64> {
    Complex::new(z.re.as_f64(), z.im.as_f64())
}

/// Integer power of a complex number by repeated squaring (negative powers invert).
pub fn powi<T: Real>(z: Complex<T>, n: i32) -> Complex<T> {
    if n < 0 {
        return Complex::new(T::one(), T::zero()) / powi(z, -n);
    }
    let mut base = z;
    let mut acc = Complex::new(T::one(), T::zero());
    let mut e = n as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base;
        }
        base = base * base;
        e >>= 1;
    }
    acc
}
