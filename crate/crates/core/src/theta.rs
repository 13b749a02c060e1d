//! Jacobi theta functions in the period-one convention
//!
//! ```text
//! theta1(v) = 2 sum_{k>=0} (-1)^k q^{(k+1/2)^2} sin((2k+1) pi v)
//! theta2(v) = 2 sum_{k>=0}        q^{(k+1/2)^2} cos((2k+1) pi v)
//! theta3(v) = 1 + 2 sum_{k>=1}        q^{k^2} cos(2k pi v)
//! theta4(v) = 1 + 2 sum_{k>=1} (-1)^k q^{k^2} cos(2k pi v)
//! ```
//!
//! with `q = exp(i pi tau)`, so `theta1` vanishes on `Z + tau Z`. Derivatives
//! are taken with respect to `v`; in particular `theta1'(0) = pi theta2(0)
//! theta3(0) theta4(0)`.
//!
//! Each term is formed as `exp(i pi tau n^2 +- 2 i pi n v)` so nothing
//! overflows even far from the real axis.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lattice::{LatticeTau, TruncationPolicy};
use crate::numerics::{csc, sec, sin_scaled, CompensatedSum, Product};
use crate::scalar::Real;

/// Which of the four theta functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaIndex(u8);

impl ThetaIndex {
    pub const ONE: Self = Self(1);
    pub const TWO: Self = Self(2);
    pub const THREE: Self = Self(3);
    pub const FOUR: Self = Self(4);

    pub fn new(j: u8) -> Result<Self> {
        if (1..=4).contains(&j) {
            Ok(Self(j))
        } else {
            Err(Error::InvalidIndex(format!("theta index {j} not in 1..=4")))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl TryFrom<u8> for ThetaIndex {
    type Error = Error;
    fn try_from(j: u8) -> Result<Self> {
        Self::new(j)
    }
}

/// Relative size at which the series is cut, measured against the largest term.
fn series_cutoff(policy: &TruncationPolicy) -> f64 {
    policy.eps * 1e-4
}

/// r-th derivative (r >= 0) of theta_j with respect to v.
pub fn theta_derivative<T: Real>(
    j: ThetaIndex,
    v: Complex<T>,
    r: u32,
    lat: &LatticeTau<T>,
    policy: &TruncationPolicy,
) -> Result<Complex<T>> {
    let zero = T::zero();
    let pi = T::PI();
    let i = Complex::new(zero, T::one());
    let tau = lat.tau();
    let half_integer = matches!(j.0, 1 | 2);
    let alternating = matches!(j.0, 1 | 4);
    // theta_j = sum_k w_k (alpha E+ + beta E-)
    let (alpha, beta) = if j.0 == 1 {
        (-i, i)
    } else {
        (Complex::new(T::one(), zero), Complex::new(T::one(), zero))
    };

    let mut acc = CompensatedSum::new();
    let mut env_max = T::zero();
    if !half_integer && r == 0 {
        acc.add(Complex::new(T::one(), zero));
        env_max = T::one();
    }
    let cutoff = T::lit(series_cutoff(policy));
    let vim = v.im.abs();
    let start = if half_integer { 0 } else { 1 };
    let mut prev_env = T::infinity();
    for k in start..policy.k_max {
        let n = if half_integer {
            T::int(k as i64) + T::lit(0.5)
        } else {
            T::int(k as i64)
        };
        let two_n_pi = T::lit(2.0) * n * pi;
        let env = (-pi * tau.im * n * n + two_n_pi * vim).exp() * two_n_pi.powi(r as i32);
        if env > env_max {
            env_max = env;
        }
        let base = i * pi * tau * (n * n);
        let phase = i * v * two_n_pi;
        let e_plus = (base + phase).exp();
        let e_minus = (base - phase).exp();
        let d_plus = crate::scalar::powi(i * two_n_pi, r as i32);
        let d_minus = crate::scalar::powi(-i * two_n_pi, r as i32);
        let mut term = alpha * d_plus * e_plus + beta * d_minus * e_minus;
        if alternating && k % 2 == 1 {
            term = -term;
        }
        acc.add(term);
        if env < prev_env && env <= cutoff * env_max {
            let out = acc.value();
            if !(out.re.is_finite() && out.im.is_finite()) {
                return Err(Error::NonFinite("theta series"));
            }
            return Ok(out);
        }
        prev_env = env;
    }
    Err(Error::TruncationOverflow {
        cap: policy.k_max,
    })
}

/// theta_j(v | tau) by its q-series.
pub fn theta<T: Real>(
    j: ThetaIndex,
    v: Complex<T>,
    lat: &LatticeTau<T>,
    policy: &TruncationPolicy,
) -> Result<Complex<T>> {
    theta_derivative(j, v, 0, lat, policy)
}

/// Null value theta_j(0) for j in {2, 3, 4}, from its own series.
pub fn theta_null<T: Real>(
    j: ThetaIndex,
    lat: &LatticeTau<T>,
    policy: &TruncationPolicy,
) -> Result<Complex<T>> {
    let zero = T::zero();
    let one = Complex::new(T::one(), zero);
    let i_pi_tau = Complex::new(zero, T::PI()) * lat.tau();
    let cutoff = T::lit(series_cutoff(policy));
    let qa = lat.q_abs();
    let two = T::lit(2.0);
    let mut acc = CompensatedSum::new();
    match j.0 {
        2 => {
            for k in 0..policy.k_max {
                let n = T::int(k as i64) + T::lit(0.5);
                acc.add((i_pi_tau * (n * n)).exp() * two);
                if qa.powf(n * n) <= cutoff * qa.powf(T::lit(0.25)) {
                    return Ok(acc.value());
                }
            }
        }
        3 | 4 => {
            acc.add(one);
            for k in 1..policy.k_max {
                let n = T::int(k as i64);
                let mut t = (i_pi_tau * (n * n)).exp() * two;
                if j.0 == 4 && k % 2 == 1 {
                    t = -t;
                }
                acc.add(t);
                if qa.powf(n * n) <= cutoff {
                    return Ok(acc.value());
                }
            }
        }
        _ => {
            return Err(Error::InvalidIndex(format!(
                "theta null requires j in {{2,3,4}}, got {}",
                j.0
            )))
        }
    }
    Err(Error::TruncationOverflow { cap: policy.k_max })
}

/// theta1'(0) = 2 pi sum_k (-1)^k (2k+1) q^{(k+1/2)^2}, summed directly.
pub fn theta1_prime0<T: Real>(lat: &LatticeTau<T>, policy: &TruncationPolicy) -> Result<Complex<T>> {
    let i_pi_tau = Complex::new(T::zero(), T::PI()) * lat.tau();
    let cutoff = T::lit(series_cutoff(policy));
    let qa = lat.q_abs();
    let mut acc = CompensatedSum::new();
    for k in 0..policy.k_max {
        let n = T::int(k as i64) + T::lit(0.5);
        let w = T::lit(2.0) * T::PI() * T::int(2 * k as i64 + 1);
        let t = (i_pi_tau * (n * n)).exp() * w;
        acc.add(if k % 2 == 1 { -t } else { t });
        if qa.powf(n * n) * T::int(2 * k as i64 + 1) <= cutoff * qa.powf(T::lit(0.25)) {
            return Ok(acc.value());
        }
    }
    Err(Error::TruncationOverflow { cap: policy.k_max })
}

/// theta_j(v) for j in {1, 2} rebuilt from the sine/cosine products
///
/// ```text
/// theta1(v) = (theta1'(0)/pi) sin(pi v) prod_{k>=1} (1 - sin^2(pi v)/sin^2(k pi tau))
/// theta2(v) = theta2(0) cos(pi v)       prod_{k>=1} (1 - sin^2(pi v)/cos^2(k pi tau))
/// ```
pub fn theta_product<T: Real>(
    j: ThetaIndex,
    v: Complex<T>,
    lat: &LatticeTau<T>,
    policy: &TruncationPolicy,
) -> Result<Complex<T>> {
    let pi = T::PI();
    let one = Complex::new(T::one(), T::zero());
    let s = (v * pi).sin();
    let s2 = s * s;
    let k_terms = policy.terms(lat.q_abs().as_f64())?;
    let mut prod = Product::new();
    for k in 1..=k_terms {
        let w = lat.tau() * (pi * T::int(k as i64));
        let r = match j.0 {
            1 => csc(w),
            2 => sec(w),
            _ => None,
        };
        let r = match (j.0, r) {
            (1 | 2, Some(r)) => r,
            (1 | 2, None) => return Err(Error::DivisionDegeneracy("theta product factor")),
            _ => {
                return Err(Error::InvalidIndex(format!(
                    "theta product requires j in {{1,2}}, got {}",
                    j.0
                )))
            }
        };
        prod.mul(one - s2 * r * r);
    }
    let lead = match j.0 {
        1 => sin_scaled(v * pi).value() * theta1_prime0(lat, policy)? / pi,
        _ => (v * pi).cos() * theta_null(ThetaIndex::TWO, lat, policy)?,
    };
    let out = lead * prod.value();
    if !(out.re.is_finite() && out.im.is_finite()) {
        return Err(Error::NonFinite("theta product"));
    }
    Ok(out)
}
