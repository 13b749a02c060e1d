use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluators. Payloads are widened to `f64` so the
/// error type does not depend on the scalar backend.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid nome: |q| = {q_abs} is outside (0, 1)")]
    InvalidNome { q_abs: f64 },

    #[error("invalid modular parameter tau = {tau}: Im tau must be positive and finite")]
    InvalidTau { tau: Complex64 },

    #[error("invalid truncation policy: {0}")]
    InvalidPolicy(&'static str),

    #[error("point {z} lies within {distance:e} of the lattice point {lattice_point}")]
    PoleProximity {
        z: Complex64,
        lattice_point: Complex64,
        distance: f64,
    },

    #[error("term {k} of a trigonometric sum is singular at z = {z}")]
    SingularTerm { z: Complex64, k: i64 },

    #[error("series did not converge within {cap} terms")]
    TruncationOverflow { cap: usize },

    #[error("point {z} violates the strip |Im z| < 2 Im tau for tau = {tau}")]
    StripViolation { z: Complex64, tau: Complex64 },

    #[error("division degeneracy: {0}")]
    DivisionDegeneracy(&'static str),

    #[error("non-finite value produced while evaluating {0}")]
    NonFinite(&'static str),

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid transformation order {n}: must be odd and between 1 and {max}")]
    InvalidOrder { n: i64, max: u32 },

    #[error("operation not available in this transformation mode: {0}")]
    ModeMismatch(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
