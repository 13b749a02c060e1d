//! Weierstrass elliptic functions for the period lattice `(2, 2 tau)`.
//!
//! The crate provides theta-backed reference evaluators ([`Weierstrass`]) and,
//! on top of them, the infinite-product forms ([`products`]), the
//! reciprocal-sine sum forms ([`sums`]), the twelve sigma-quotient functions
//! ([`xi`]) and the odd-order transformation relations ([`transforms`]).
//!
//! Everything is generic over the real scalar ([`Real`]); the `*64` aliases
//! below fix it to `f64`.

pub mod error;
pub mod lattice;
pub mod numerics;
pub mod products;
pub mod reading;
pub mod sums;
pub mod scalar;
pub mod theta;
pub mod transforms;
pub mod weierstrass;
pub mod xi;

pub use error::{Error, Result};
pub use lattice::{
    pole_distance, reduce_to_cell, truncation_terms, EvalPoint, LatticeTau, TruncationPolicy,
    POLE_GUARD,
};
pub use num_complex::Complex;
pub use reading::Reading;
pub use scalar::Real;
pub use theta::ThetaIndex;
pub use transforms::{ShiftUnit, Transform, TransformMode, TransformOrder};
pub use weierstrass::{EValues, HalfPeriodIndex, Weierstrass};
pub use xi::XiIndex;

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type Weierstrass64 = Weierstrass<f64>;
pub type Weierstrass32 = Weierstrass<f32>;
pub type LatticeTau64 = LatticeTau<f64>;
pub type EValues64 = EValues<f64>;
pub type Transform64 = Transform<f64>;
