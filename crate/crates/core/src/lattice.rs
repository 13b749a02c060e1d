//! The period lattice `{2m + 2n tau}`, its nome, argument reduction and
//! truncation budgeting.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{to_c64, Real};

/// Minimum distance to a lattice point accepted by the evaluators.
pub const POLE_GUARD: f64 = 1e-6;

/// Tolerance and term-count rule for every infinite sum and product.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Target relative tolerance.
    pub eps: f64,
    /// Extra terms appended to the tail estimate.
    pub guard: usize,
    /// Hard cap on the number of terms.
    pub k_max: usize,
    /// Overrides both term rules with a fixed count (convergence studies).
    pub fixed: Option<usize>,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            eps: 1e-12,
            guard: 10,
            k_max: 4096,
            fixed: None,
        }
    }
}

impl TruncationPolicy {
    pub fn new(eps: f64, guard: usize, k_max: usize) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidPolicy("eps must lie in (0, 1)"));
        }
        if k_max < guard {
            return Err(Error::InvalidPolicy("k_max must be at least guard"));
        }
        Ok(Self {
            eps,
            guard,
            k_max,
            fixed: None,
        })
    }

    /// Exactly `k` terms or factors in every truncated sum and product.
    pub fn fixed_terms(k: usize) -> Self {
        Self {
            fixed: Some(k),
            ..Self::default()
        }
    }

    pub fn with_eps(self, eps: f64) -> Result<Self> {
        Self::new(eps, self.guard, self.k_max)
    }

    /// Number of factors/terms for a tail decaying like `q_abs^{2k}`:
    /// `ceil(ln eps / (2 ln q_abs)) + guard`, clamped to `[guard, k_max]`.
    pub fn terms(&self, q_abs: f64) -> Result<usize> {
        let k = truncation_terms(q_abs, self.eps, self.guard, self.k_max)?;
        Ok(self.fixed.unwrap_or(k))
    }

    /// Terms for a tail bounded by `exp(-(k rate - offset))`:
    /// `ceil((ln(1/eps) + offset)/rate) + guard`. Unlike [`Self::terms`] this
    /// reports [`Error::TruncationOverflow`] instead of clamping, because an
    /// offset-driven count above `k_max` means the request is outside the
    /// convergence region for this policy.
    pub fn decay_terms(&self, rate: f64, offset: f64) -> Result<usize> {
        if !(rate > 0.0 && rate.is_finite() && offset.is_finite()) {
            return Err(Error::InvalidPolicy("decay rate must be positive"));
        }
        if let Some(k) = self.fixed {
            return Ok(k);
        }
        let base = ((-self.eps.ln() + offset.max(0.0)) / rate).ceil().max(0.0);
        if base + self.guard as f64 > self.k_max as f64 {
            return Err(Error::TruncationOverflow { cap: self.k_max });
        }
        Ok(base as usize + self.guard)
    }
}

/// Free-function form of [`TruncationPolicy::terms`].
pub fn truncation_terms(q_abs: f64, eps: f64, guard: usize, k_max: usize) -> Result<usize> {
    if !(q_abs > 0.0 && q_abs < 1.0) {
        return Err(Error::InvalidNome { q_abs });
    }
    let base = if eps >= 1.0 {
        0.0
    } else {
        (eps.ln() / (2.0 * q_abs.ln())).ceil().max(0.0)
    };
    let k = if base.is_finite() && base < k_max as f64 {
        base as usize + guard
    } else {
        k_max
    };
    Ok(k.clamp(guard, k_max))
}

/// The modular parameter `tau` (Im tau > 0) and its nome `q = exp(i pi tau)`.
/// Fixes the periods `(2, 2 tau)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeTau<T: Real> {
    tau: Complex<T>,
    q: Complex<T>,
    q_abs: T,
}

impl<T: Real> LatticeTau<T> {
    pub fn new(tau: Complex<T>) -> Result<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) || tau.im <= T::zero() {
            return Err(Error::InvalidTau { tau: to_c64(tau) });
        }
        let q = (Complex::new(T::zero(), T::PI()) * tau).exp();
        let q_abs = (-T::PI() * tau.im).exp();
        if !(q_abs > T::zero() && q_abs < T::one()) {
            return Err(Error::InvalidNome {
                q_abs: q_abs.as_f64(),
            });
        }
        Ok(Self { tau, q, q_abs })
    }

    pub fn tau(&self) -> Complex<T> {
        self.tau
    }

    pub fn q(&self) -> Complex<T> {
        self.q
    }

    pub fn q_abs(&self) -> T {
        self.q_abs
    }

    /// Lattice point `2a + 2b tau`.
    pub fn point(&self, a: i64, b: i64) -> Complex<T> {
        Complex::new(T::int(2 * a), T::zero()) + self.tau * T::int(2 * b)
    }

    /// Half-period `omega_j`: `1`, `1 + tau`, `tau` for `j = 1, 2, 3`.
    pub fn half_period(&self, j: usize) -> Complex<T> {
        let one = Complex::new(T::one(), T::zero());
        match j {
            1 => one,
            2 => one + self.tau,
            3 => self.tau,
            _ => panic!("half-period index must be 1, 2 or 3"),
        }
    }

    /// `true` when `|Im z| < 2 Im tau`.
    pub fn in_strip(&self, z: Complex<T>) -> bool {
        z.im.abs() < T::lit(2.0) * self.tau.im
    }

    pub fn check_strip(&self, z: Complex<T>) -> Result<()> {
        if self.in_strip(z) {
            Ok(())
        } else {
            Err(Error::StripViolation {
                z: to_c64(z),
                tau: to_c64(self.tau),
            })
        }
    }
}

/// A point together with its representative in the fundamental cell:
/// `z = reduced + 2a + 2b tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint<T: Real> {
    pub z: Complex<T>,
    pub reduced: Complex<T>,
    pub shifts: (i64, i64),
}

/// Splits `z` into lattice coordinates without any pole check.
pub fn reduce_unchecked<T: Real>(z: Complex<T>, lat: &LatticeTau<T>) -> EvalPoint<T> {
    let two = T::lit(2.0);
    let tau = lat.tau();
    let b = (z.im / (two * tau.im)).round();
    let a = ((z.re - two * b * tau.re) / two).round();
    let (a, b) = (a.to_i64().unwrap_or(0), b.to_i64().unwrap_or(0));
    let reduced = z - lat.point(a, b);
    EvalPoint {
        z,
        reduced,
        shifts: (a, b),
    }
}

/// Reduces `z` to the cell around the origin and rejects points within
/// [`POLE_GUARD`] of the lattice.
pub fn reduce_to_cell<T: Real>(z: Complex<T>, lat: &LatticeTau<T>) -> Result<EvalPoint<T>> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("argument"));
    }
    let p = reduce_unchecked(z, lat);
    let (d, nearest) = nearest_lattice_point(p.reduced, lat);
    if d <= T::lit(POLE_GUARD) {
        let (a, b) = p.shifts;
        return Err(Error::PoleProximity {
            z: to_c64(z),
            lattice_point: to_c64(nearest + lat.point(a, b)),
            distance: d.as_f64(),
        });
    }
    Ok(p)
}

fn nearest_lattice_point<T: Real>(reduced: Complex<T>, lat: &LatticeTau<T>) -> (T, Complex<T>) {
    let mut best = (T::infinity(), Complex::new(T::zero(), T::zero()));
    for a in -1..=1 {
        for b in -1..=1 {
            let p = lat.point(a, b);
            let d = (reduced - p).norm();
            if d < best.0 {
                best = (d, p);
            }
        }
    }
    best
}

/// Euclidean distance from `z` to the nearest point of `{2m + 2n tau}`.
pub fn pole_distance<T: Real>(z: Complex<T>, lat: &LatticeTau<T>) -> T {
    let p = reduce_unchecked(z, lat);
    nearest_lattice_point(p.reduced, lat).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn lat(re: f64, im: f64) -> LatticeTau<f64> {
        LatticeTau::new(Complex64::new(re, im)).unwrap()
    }

    #[test]
    fn fixed_terms_override_both_rules() {
        let p = TruncationPolicy::fixed_terms(7);
        assert_eq!(p.terms(0.5).unwrap(), 7);
        assert_eq!(p.decay_terms(0.1, 50.0).unwrap(), 7);
        assert!(p.terms(1.5).is_err());
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncation_terms(0.1, 1e-12, 10, 4096).unwrap(), 16);
        assert_eq!(truncation_terms(0.5, 1e-12, 10, 4096).unwrap(), 30);
        assert_eq!(truncation_terms(0.9, 1.0, 10, 4096).unwrap(), 10);
        assert!(matches!(
            truncation_terms(1.0, 1e-12, 10, 4096),
            Err(Error::InvalidNome { .. })
        ));
        assert!(matches!(
            truncation_terms(0.0, 1e-12, 10, 4096),
            Err(Error::InvalidNome { .. })
        ));
        assert_eq!(truncation_terms(0.999999, 1e-12, 10, 100).unwrap(), 100);
    }

    #[test]
    fn policy_validation() {
        assert!(TruncationPolicy::new(0.0, 10, 100).is_err());
        assert!(TruncationPolicy::new(1.5, 10, 100).is_err());
        assert!(TruncationPolicy::new(1e-10, 10, 5).is_err());
        assert!(TruncationPolicy::new(1e-10, 0, 5).is_ok());
    }

    #[test]
    fn tau_must_be_in_upper_half_plane() {
        assert!(LatticeTau::new(Complex64::new(0.3, 0.0)).is_err());
        assert!(LatticeTau::new(Complex64::new(0.3, -1.0)).is_err());
        assert!(LatticeTau::new(Complex64::new(f64::NAN, 1.0)).is_err());
        let l = lat(0.5, 1.0);
        assert!((l.q().norm() - l.q_abs()).abs() < 1e-15);
    }

    #[test]
    fn reduction_examples() {
        let p = reduce_to_cell(Complex64::new(0.3, 0.0), &lat(0.0, 1.0)).unwrap();
        assert!((p.reduced - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        assert_eq!(p.shifts, (0, 0));

        let p = reduce_to_cell(Complex64::new(0.3, 2.0), &lat(0.0, 1.0)).unwrap();
        assert!((p.reduced - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        assert_eq!(p.shifts, (0, 1));

        let p = reduce_to_cell(Complex64::new(2.3, 0.0), &lat(1.0, 2.0)).unwrap();
        assert!((p.reduced - Complex64::new(0.3, 0.0)).norm() < 1e-15);
        assert_eq!(p.shifts, (1, 0));
    }

    #[test]
    fn reduction_rejects_lattice_points() {
        let l = lat(0.2, 1.1);
        let z = l.point(3, -2) + Complex64::new(1e-8, 0.0);
        match reduce_to_cell(z, &l) {
            Err(Error::PoleProximity { lattice_point, .. }) => {
                assert!((lattice_point - l.point(3, -2)).norm() < 1e-12)
            }
            other => panic!("expected pole proximity, got {other:?}"),
        }
    }

    #[test]
    fn pole_distance_examples() {
        assert_eq!(pole_distance(Complex64::new(0.0, 0.0), &lat(0.0, 1.0)), 0.0);
        let d = pole_distance(Complex64::new(1.0, 1.0), &lat(0.0, 1.0));
        assert!((d - 2f64.sqrt()).abs() < 1e-15);
        let d = pole_distance(Complex64::new(0.5, 0.0), &lat(0.0, 2.0));
        assert!((d - 0.5).abs() < 1e-15);
    }
}
