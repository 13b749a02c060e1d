//! Theta-backed reference implementations of the Weierstrass functions for
//! the lattice with periods `(2, 2 tau)`.
//!
//! With `v = z/2` and theta nulls `th2, th3, th4`:
//!
//! ```text
//! sigma(z)    = 2/theta1'(0) * exp(eta z^2 / 2) * theta1(v)
//! sigma_j(z)  = exp(eta z^2 / 2) * theta_{j+1}(v) / theta_{j+1}(0)
//! f_j(z)      = sigma_j(z)/sigma(z) = (pi/2) N_j theta_{j+1}(v)/theta1(v)
//! wp(z) - e_j = f_j(z)^2,          wp'(z) = -2 f_1 f_2 f_3
//! ```
//!
//! where `N_1 = th3 th4`, `N_2 = th2 th4`, `N_3 = th2 th3` and `eta = zeta(1)`.
//! The sigma gauge is fixed by `sigma'(0) = 1` and `sigma_j(0) = 1`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lattice::{pole_distance, reduce_to_cell, reduce_unchecked, LatticeTau, TruncationPolicy, POLE_GUARD};
use crate::numerics::{csc, CompensatedSum};
use crate::scalar::{is_finite, to_c64, Real};
use crate::theta::{theta, theta1_prime0, theta_derivative, theta_null, ThetaIndex};

/// Index j in {1, 2, 3} of a half-period `omega_1 = 1`, `omega_2 = 1 + tau`,
/// `omega_3 = tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfPeriodIndex(u8);

impl HalfPeriodIndex {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);
    pub const ALL: [Self; 3] = [Self(1), Self(2), Self(3)];

    pub fn new(j: u8) -> Result<Self> {
        if (1..=3).contains(&j) {
            Ok(Self(j))
        } else {
            Err(Error::InvalidIndex(format!("half-period index {j} not in 1..=3")))
        }
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    pub fn omega<T: Real>(self, lat: &LatticeTau<T>) -> Complex<T> {
        lat.half_period(self.get())
    }

    /// Theta function paired with this half-period (`e_j <-> theta_{j+1}`).
    pub fn theta(self) -> ThetaIndex {
        ThetaIndex::new(self.0 + 1).expect("j + 1 in 2..=4")
    }

    /// The other two indices in increasing order.
    pub fn others(self) -> (Self, Self) {
        match self.0 {
            1 => (Self(2), Self(3)),
            2 => (Self(1), Self(3)),
            _ => (Self(1), Self(2)),
        }
    }
}

impl TryFrom<u8> for HalfPeriodIndex {
    type Error = Error;
    fn try_from(j: u8) -> Result<Self> {
        Self::new(j)
    }
}

/// The three critical values `e_j = wp(omega_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EValues<T: Real> {
    pub e1: Complex<T>,
    pub e2: Complex<T>,
    pub e3: Complex<T>,
    pub tau: Complex<T>,
}

impl<T: Real> EValues<T> {
    pub fn get(&self, j: HalfPeriodIndex) -> Complex<T> {
        match j.0 {
            1 => self.e1,
            2 => self.e2,
            _ => self.e3,
        }
    }
}

/// Per-tau context: lattice, policy and the theta nulls, `e_j` and `eta`
/// computed once at construction. Immutable afterwards, so it can be shared
/// freely across threads.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Weierstrass<T: Real> {
    lat: LatticeTau<T>,
    policy: TruncationPolicy,
    th2: Complex<T>,
    th3: Complex<T>,
    th4: Complex<T>,
    th1p: Complex<T>,
    e: EValues<T>,
    eta: Complex<T>,
}

/// Below this modulus sigma(z) is replaced by its leading Taylor term.
const SIGMA_TAYLOR_RADIUS: f64 = 1e-5;

impl<T: Real> Weierstrass<T> {
    pub fn new(tau: Complex<T>, policy: TruncationPolicy) -> Result<Self> {
        Self::from_lattice(LatticeTau::new(tau)?, policy)
    }

    pub fn from_lattice(lat: LatticeTau<T>, policy: TruncationPolicy) -> Result<Self> {
        let th2 = theta_null(ThetaIndex::TWO, &lat, &policy)?;
        let th3 = theta_null(ThetaIndex::THREE, &lat, &policy)?;
        let th4 = theta_null(ThetaIndex::FOUR, &lat, &policy)?;
        let th1p = theta1_prime0(&lat, &policy)?;
        let c = T::PI() * T::PI() / T::lit(12.0);
        let (a2, a3, a4) = (th2.powu(4), th3.powu(4), th4.powu(4));
        let e = EValues {
            e1: (a3 + a4) * c,
            e2: (a2 - a4) * c,
            e3: -(a2 + a3) * c,
            tau: lat.tau(),
        };
        let eta = eta_series(&lat, &policy)?;
        Ok(Self {
            lat,
            policy,
            th2,
            th3,
            th4,
            th1p,
            e,
            eta,
        })
    }

    pub fn lattice(&self) -> &LatticeTau<T> {
        &self.lat
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    pub fn tau(&self) -> Complex<T> {
        self.lat.tau()
    }

    /// Null value theta_j(0) for j in {2,3,4}; theta_1(0) is zero.
    pub fn theta_null(&self, j: ThetaIndex) -> Complex<T> {
        match j.get() {
            2 => self.th2,
            3 => self.th3,
            4 => self.th4,
            _ => Complex::new(T::zero(), T::zero()),
        }
    }

    pub fn theta1_prime0(&self) -> Complex<T> {
        self.th1p
    }

    pub fn e_values(&self) -> EValues<T> {
        self.e
    }

    pub fn e(&self, j: HalfPeriodIndex) -> Complex<T> {
        self.e.get(j)
    }

    /// `e_a - e_b` from a single theta null:
    /// `e1 - e2 = (pi^2/4) theta4^4`, `e1 - e3 = (pi^2/4) theta3^4`,
    /// `e2 - e3 = (pi^2/4) theta2^4`. Keeps full relative accuracy when two
    /// roots nearly coincide.
    pub fn e_difference(&self, a: HalfPeriodIndex, b: HalfPeriodIndex) -> Complex<T> {
        let c = T::PI() * T::PI() / T::lit(4.0);
        let d = |th: Complex<T>| th.powu(4) * c;
        match (a.0, b.0) {
            (1, 2) => d(self.th4),
            (1, 3) => d(self.th3),
            (2, 3) => d(self.th2),
            (2, 1) => -d(self.th4),
            (3, 1) => -d(self.th3),
            (3, 2) => -d(self.th2),
            _ => Complex::new(T::zero(), T::zero()),
        }
    }

    /// Quasi-period constant eta = zeta(1), from the reciprocal-sine series
    /// `(pi^2/2) (1/6 + sum_{n>=1} 1/sin^2(n pi tau))`.
    pub fn eta1(&self) -> Complex<T> {
        self.eta
    }

    /// eta from theta derivatives, `-(1/12) theta1'''(0)/theta1'(0)`.
    /// Independent of the reciprocal-sine series.
    pub fn eta1_theta(&self) -> Result<Complex<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let d3 = theta_derivative(ThetaIndex::ONE, zero, 3, &self.lat, &self.policy)?;
        Ok(-d3 / self.th1p / T::lit(12.0))
    }

    pub fn theta(&self, j: ThetaIndex, v: Complex<T>) -> Result<Complex<T>> {
        theta(j, v, &self.lat, &self.policy)
    }

    fn null_pair(&self, j: HalfPeriodIndex) -> Complex<T> {
        match j.0 {
            1 => self.th3 * self.th4,
            2 => self.th2 * self.th4,
            _ => self.th2 * self.th3,
        }
    }

    /// `sigma_j(z)/sigma(z)` evaluated in the cell with the sign picked up
    /// from the lattice shifts.
    pub fn quotient(&self, j: HalfPeriodIndex, z: Complex<T>) -> Result<Complex<T>> {
        let p = reduce_to_cell(z, &self.lat)?;
        let v = p.reduced * T::lit(0.5);
        let num = self.theta(j.theta(), v)?;
        let den = self.theta(ThetaIndex::ONE, v)?;
        let mut f = num / den * self.null_pair(j) * (T::PI() * T::lit(0.5));
        if quotient_sign_flips(j, p.shifts) {
            f = -f;
        }
        finite(f, "sigma quotient")
    }

    /// `wp(z) - e_j`, computed as the square of the sigma quotient.
    pub fn wp_minus_e(&self, j: HalfPeriodIndex, z: Complex<T>) -> Result<Complex<T>> {
        let f = self.quotient(j, z)?;
        Ok(f * f)
    }

    /// Weierstrass wp(z; 2, 2 tau).
    pub fn wp(&self, z: Complex<T>) -> Result<Complex<T>> {
        Ok(self.e.e1 + self.wp_minus_e(HalfPeriodIndex::ONE, z)?)
    }

    /// wp'(z) = -2 f_1 f_2 f_3.
    pub fn wp_prime(&self, z: Complex<T>) -> Result<Complex<T>> {
        let p = reduce_to_cell(z, &self.lat)?;
        let r = p.reduced;
        let f1 = self.quotient(HalfPeriodIndex::ONE, r)?;
        let f2 = self.quotient(HalfPeriodIndex::TWO, r)?;
        let f3 = self.quotient(HalfPeriodIndex::THREE, r)?;
        finite(f1 * f2 * f3 * T::lit(-2.0), "wp'")
    }

    fn gauge(&self, z: Complex<T>) -> Complex<T> {
        (self.eta * z * z * T::lit(0.5)).exp()
    }

    /// Weierstrass sigma. Entire, so no reduction and no pole guard.
    pub fn sigma(&self, z: Complex<T>) -> Result<Complex<T>> {
        if z.norm() < T::lit(SIGMA_TAYLOR_RADIUS) {
            return Ok(z);
        }
        let t = self.theta(ThetaIndex::ONE, z * T::lit(0.5))?;
        finite(self.gauge(z) * t * T::lit(2.0) / self.th1p, "sigma")
    }

    /// Co-sigma functions sigma_1, sigma_2, sigma_3.
    pub fn sigma_j(&self, j: HalfPeriodIndex, z: Complex<T>) -> Result<Complex<T>> {
        let th = j.theta();
        let t = self.theta(th, z * T::lit(0.5))?;
        finite(self.gauge(z) * t / self.theta_null(th), "sigma_j")
    }

    /// Logarithmic derivative sigma_j'/sigma_j; `j = 0` means sigma itself
    /// (that is, the Weierstrass zeta function).
    pub fn sigma_logderiv(&self, j: u8, z: Complex<T>) -> Result<Complex<T>> {
        let th = match j {
            0 => {
                self.check_pole(z)?;
                ThetaIndex::ONE
            }
            1..=3 => HalfPeriodIndex::new(j)?.theta(),
            _ => return Err(Error::InvalidIndex(format!("sigma index {j} not in 0..=3"))),
        };
        let v = z * T::lit(0.5);
        let d = theta_derivative(th, v, 1, &self.lat, &self.policy)?;
        let t = self.theta(th, v)?;
        finite(self.eta * z + d / t * T::lit(0.5), "sigma log-derivative")
    }

    /// Weierstrass zeta, `sigma'/sigma`.
    pub fn zeta(&self, z: Complex<T>) -> Result<Complex<T>> {
        self.sigma_logderiv(0, z)
    }

    fn check_pole(&self, z: Complex<T>) -> Result<()> {
        let d = pole_distance(z, &self.lat);
        if d <= T::lit(POLE_GUARD) {
            let p = reduce_unchecked(z, &self.lat);
            return Err(Error::PoleProximity {
                z: to_c64(z),
                lattice_point: to_c64(z - p.reduced),
                distance: d.as_f64(),
            });
        }
        Ok(())
    }
}

/// Whether f_j picks up a minus sign under `z -> z + 2a + 2b tau`:
/// f_2, f_3 flip under `z + 2`, f_1, f_2 flip under `z + 2 tau`.
pub(crate) fn quotient_sign_flips(j: HalfPeriodIndex, (a, b): (i64, i64)) -> bool {
    let (s1, s2) = match j.0 {
        1 => (0, 1),
        2 => (1, 1),
        _ => (1, 0),
    };
    (a.rem_euclid(2) * s1 + b.rem_euclid(2) * s2) % 2 == 1
}

fn eta_series<T: Real>(lat: &LatticeTau<T>, policy: &TruncationPolicy) -> Result<Complex<T>> {
    let k_terms = policy.terms(lat.q_abs().as_f64())?;
    let mut acc = CompensatedSum::new();
    acc.add(Complex::new(T::one() / T::lit(6.0), T::zero()));
    for n in 1..=k_terms {
        let c = csc(lat.tau() * (T::PI() * T::int(n as i64)))
            .ok_or(Error::DivisionDegeneracy("sin(n pi tau) = 0"))?;
        acc.add(c * c);
    }
    Ok(acc.value() * (T::PI() * T::PI() * T::lit(0.5)))
}

pub(crate) fn finite<T: Real>(z: Complex<T>, what: &'static str) -> Result<Complex<T>> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn w(re: f64, im: f64) -> Weierstrass<f64> {
        Weierstrass::new(Complex64::new(re, im), TruncationPolicy::default()).unwrap()
    }

    #[test]
    fn wp_at_one_is_e1() {
        let w = w(0.3, 1.1);
        let v = w.wp(Complex64::new(1.0, 0.0)).unwrap();
        assert!((v - w.e_values().e1).norm() < 1e-12 * w.e_values().e1.norm());
    }

    #[test]
    fn square_lattice_e_values() {
        let w = w(0.0, 1.0);
        let e = w.e_values();
        assert!(e.e2.norm() < 1e-13);
        assert!((e.e1 + e.e3).norm() < 1e-13);
    }

    #[test]
    fn e_difference_matches_subtraction() {
        let w = w(0.25, 0.95);
        for a in HalfPeriodIndex::ALL {
            for b in HalfPeriodIndex::ALL {
                let d = w.e_difference(a, b);
                assert!((d - (w.e(a) - w.e(b))).norm() < 1e-12);
                assert!((d + w.e_difference(b, a)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn e_difference_keeps_relative_accuracy_for_large_tau() {
        // e2 - e3 ~ pi^2 4 q with q = exp(-12 pi) ~ 4e-17.
        let w = w(0.0, 12.0);
        let d = w.e_difference(HalfPeriodIndex::TWO, HalfPeriodIndex::THREE);
        let q = (-12.0 * std::f64::consts::PI).exp();
        let expect = std::f64::consts::PI.powi(2) / 4.0 * 16.0 * q;
        assert!(((d.re - expect) / expect).abs() < 1e-10, "{d}");
    }

    #[test]
    fn wp_prime_vanishes_at_half_periods() {
        let w = w(-0.2, 0.9);
        for j in HalfPeriodIndex::ALL {
            let z = j.omega(w.lattice());
            let d = w.wp_prime(z).unwrap();
            assert!(d.norm() < 1e-10 * (1.0 + w.e(j).norm()));
        }
    }

    #[test]
    fn sigma_normalization_near_zero() {
        let w = w(0.0, 1.2);
        let z = Complex64::new(1e-4, 0.0);
        assert!((w.sigma(z).unwrap() / z - 1.0).norm() < 1e-7);
        for j in HalfPeriodIndex::ALL {
            assert!((w.sigma_j(j, Complex64::new(0.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        }
    }

    #[test]
    fn zeta_rejects_poles() {
        let w = w(0.0, 1.0);
        assert!(matches!(
            w.zeta(Complex64::new(2.0, 2.0)),
            Err(Error::PoleProximity { .. })
        ));
        assert!(matches!(
            w.wp(Complex64::new(0.0, 0.0)),
            Err(Error::PoleProximity { .. })
        ));
    }

    #[test]
    fn sign_table() {
        use HalfPeriodIndex as H;
        assert!(!quotient_sign_flips(H::ONE, (1, 0)));
        assert!(quotient_sign_flips(H::TWO, (1, 0)));
        assert!(quotient_sign_flips(H::THREE, (-1, 0)));
        assert!(quotient_sign_flips(H::ONE, (0, 1)));
        assert!(!quotient_sign_flips(H::THREE, (0, -3) ));
        assert!(!quotient_sign_flips(H::TWO, (1, 1)));
    }
}
