//! Low-level complex arithmetic: compensated summation, overflow-safe
//! trigonometric kernels and a log-scaled product accumulator.
//!
//! Every series and product in the crate has terms like `sin(k pi tau + x)`
//! whose magnitude grows like `|q|^{-k}`. The kernels here never form those
//! large intermediates; they return either a bounded value (`csc`, `cot`,
//! `tan`) or a [`Scaled`] pair `mantissa * exp(log)` that can be combined
//! before exponentiating.

use std::ops::{Div, Mul};

use num_complex::Complex;

use crate::scalar::Real;

/// Neumaier (improved Kahan) summation, applied componentwise.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum<T: Real> {
    sum: Complex<T>,
    comp: Complex<T>,
}

#[inline]
fn two_sum<T: Real>(s: T, x: T) -> (T, T) {
    let t = s + x;
    let c = if s.abs() >= x.abs() {
        (s - t) + x
    } else {
        (x - t) + s
    };
    (t, c)
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            sum: Complex::new(T::zero(), T::zero()),
            comp: Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn add(&mut self, x: Complex<T>) {
        let (re, cre) = two_sum(self.sum.re, x.re);
        let (im, cim) = two_sum(self.sum.im, x.im);
        self.sum = Complex::new(re, im);
        self.comp = self.comp + Complex::new(cre, cim);
    }

    pub fn value(&self) -> Complex<T> {
        self.sum + self.comp
    }
}

impl<T: Real> FromIterator<Complex<T>> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = Complex<T>>>(iter: I) -> Self {
        let mut acc = Self::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Compensated sum of an iterator of complex values.
pub fn csum<T: Real, I: IntoIterator<Item = Complex<T>>>(iter: I) -> Complex<T> {
    iter.into_iter().collect::<CompensatedSum<T>>().value()
}

/// A complex number held as `mant * exp(log)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled<T: Real> {
    pub mant: Complex<T>,
    pub log: Complex<T>,
}

impl<T: Real> Scaled<T> {
    pub fn one() -> Self {
        Self::from_value(Complex::new(T::one(), T::zero()))
    }

    pub fn from_value(v: Complex<T>) -> Self {
        Self {
            mant: v,
            log: Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn value(self) -> Complex<T> {
        self.mant * self.log.exp()
    }

    pub fn powi(self, n: i32) -> Self {
        Self {
            mant: crate::scalar::powi(self.mant, n),
            log: self.log * T::int(n as i64),
        }
    }

    /// Moves the magnitude of the mantissa into the exponent, keeping the
    /// mantissa's phase. Keeps long products clear of overflow/underflow.
    pub fn normalize(self) -> Self {
        let m = self.mant.norm();
        if m == T::zero() || !m.is_finite() {
            return self;
        }
        Self {
            mant: self.mant / m,
            log: self.log + Complex::new(m.ln(), T::zero()),
        }
    }
}

impl<T: Real> Mul for Scaled<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self {
            mant: self.mant * rhs.mant,
            log: self.log + rhs.log,
        }
    }
}

impl<T: Real> Div for Scaled<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        Self {
            mant: self.mant / rhs.mant,
            log: self.log - rhs.log,
        }
    }
}

#[inline]
fn i_times<T: Real>(w: Complex<T>) -> Complex<T> {
    Complex::new(-w.im, w.re)
}

/// `sin w` as a [`Scaled`] value with a bounded mantissa.
pub fn sin_scaled<T: Real>(w: Complex<T>) -> Scaled<T> {
    let two_i = Complex::new(T::zero(), T::lit(2.0));
    let one = Complex::new(T::one(), T::zero());
    if w.im >= T::zero() {
        // sin w = e^{-iw} (e^{2iw} - 1) / 2i
        let e2 = (i_times(w) * T::lit(2.0)).exp();
        Scaled {
            mant: (e2 - one) / two_i,
            log: -i_times(w),
        }
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / 2i
        let e2 = (-i_times(w) * T::lit(2.0)).exp();
        Scaled {
            mant: (one - e2) / two_i,
            log: i_times(w),
        }
    }
}

/// `cos w` as a [`Scaled`] value with a bounded mantissa.
pub fn cos_scaled<T: Real>(w: Complex<T>) -> Scaled<T> {
    let two = T::lit(2.0);
    let one = Complex::new(T::one(), T::zero());
    if w.im >= T::zero() {
        let e2 = (i_times(w) * two).exp();
        Scaled {
            mant: (e2 + one) / two,
            log: -i_times(w),
        }
    } else {
        let e2 = (-i_times(w) * two).exp();
        Scaled {
            mant: (one + e2) / two,
            log: i_times(w),
        }
    }
}

/// `1 / sin w`; `None` when `sin w` vanishes to working precision.
pub fn csc<T: Real>(w: Complex<T>) -> Option<Complex<T>> {
    let s = sin_scaled(w);
    if s.mant.norm() <= T::epsilon() * T::lit(8.0) {
        return None;
    }
    Some((-s.log).exp() / s.mant)
}

/// `1 / cos w`; `None` when `cos w` vanishes to working precision.
pub fn sec<T: Real>(w: Complex<T>) -> Option<Complex<T>> {
    let c = cos_scaled(w);
    if c.mant.norm() <= T::epsilon() * T::lit(8.0) {
        return None;
    }
    Some((-c.log).exp() / c.mant)
}

/// `cot w`, bounded away from the real-axis poles.
pub fn cot<T: Real>(w: Complex<T>) -> Option<Complex<T>> {
    let s = sin_scaled(w);
    let c = cos_scaled(w);
    if s.mant.norm() <= T::epsilon() * T::lit(8.0) {
        return None;
    }
    // both share the same exponent
    Some(c.mant / s.mant)
}

/// `tan w`.
pub fn tan<T: Real>(w: Complex<T>) -> Option<Complex<T>> {
    let s = sin_scaled(w);
    let c = cos_scaled(w);
    if c.mant.norm() <= T::epsilon() * T::lit(8.0) {
        return None;
    }
    Some(s.mant / c.mant)
}

/// Running product of many factors, renormalized so that neither the
/// mantissa nor the exponent can overflow. Phases are carried in the
/// mantissa, so no logarithm branch is ever chosen.
#[derive(Debug, Clone, Copy)]
pub struct Product<T: Real> {
    acc: Scaled<T>,
    count: usize,
}

impl<T: Real> Default for Product<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Real> Product<T> {
    pub fn new() -> Self {
        Self {
            acc: Scaled::one(),
            count: 0,
        }
    }

    pub fn mul_scaled(&mut self, f: Scaled<T>) {
        self.acc = self.acc * f;
        self.bump();
    }

    pub fn div_scaled(&mut self, f: Scaled<T>) {
        self.acc = self.acc / f;
        self.bump();
    }

    pub fn mul(&mut self, f: Complex<T>) {
        self.acc.mant = self.acc.mant * f;
        self.bump();
    }

    pub fn div(&mut self, f: Complex<T>) {
        self.acc.mant = self.acc.mant / f;
        self.bump();
    }

    fn bump(&mut self) {
        self.count += 1;
        let m = self.acc.mant.norm();
        if self.count % 16 == 0 || m > T::lit(1e100) || (m < T::lit(1e-100) && m > T::zero()) {
            self.acc = self.acc.normalize();
        }
    }

    pub fn scaled(&self) -> Scaled<T> {
        self.acc
    }

    pub fn value(&self) -> Complex<T> {
        self.acc.value()
    }
}
