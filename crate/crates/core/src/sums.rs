//! Reciprocal-sine and cotangent sum representations of the logarithmic
//! derivatives of `wp - e_j`, the sigma functions and the xi functions.
//!
//! The basic object is
//!
//! ```text
//! S(z; p, -+) = sum_k 1/sin(2 k pi p -+ pi z)
//! ```
//!
//! which converges in the strip `|Im z| < 2 Im p`. Terms `k` and `-k` are
//! added together before accumulation.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lattice::TruncationPolicy;
use crate::numerics::{cos_scaled, cot, csc, tan, CompensatedSum};
use crate::reading::Reading;
use crate::scalar::{to_c64, Real};
use crate::weierstrass::{finite, HalfPeriodIndex, Weierstrass};

/// Summation range of a reciprocal-sine sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexSet {
    /// Every `k` in Z.
    All,
    /// Every `k` in Z except 0.
    NonZero,
}

/// Sign in front of `pi z` inside the sine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SineSign {
    /// `sin(2 k pi p - pi z)`
    Minus,
    /// `sin(2 k pi p + pi z)`
    Plus,
}

/// Parameters of a reciprocal-sine sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SineSumSpec<T: Real> {
    phase_tau: Complex<T>,
    pub sign: SineSign,
    pub index_set: IndexSet,
}

impl<T: Real> SineSumSpec<T> {
    pub fn new(phase_tau: Complex<T>, sign: SineSign, index_set: IndexSet) -> Result<Self> {
        if !(phase_tau.im > T::zero()) || !phase_tau.re.is_finite() {
            return Err(Error::InvalidTau {
                tau: to_c64(phase_tau),
            });
        }
        Ok(Self {
            phase_tau,
            sign,
            index_set,
        })
    }

    pub fn phase_tau(&self) -> Complex<T> {
        self.phase_tau
    }
}

/// `sum_k 1/sin(2 k pi p -+ pi z)` over the index set of `spec`.
pub fn sin_reciprocal_sum<T: Real>(
    z: Complex<T>,
    spec: &SineSumSpec<T>,
    policy: &TruncationPolicy,
) -> Result<Complex<T>> {
    let p = spec.phase_tau;
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite("argument"));
    }
    if !(z.im.abs() < T::lit(2.0) * p.im) {
        return Err(Error::StripViolation {
            z: to_c64(z),
            tau: to_c64(p),
        });
    }
    let pi = T::PI();
    let rate = 2.0 * std::f64::consts::PI * p.im.as_f64();
    let k_terms = policy.decay_terms(rate, std::f64::consts::PI * z.im.abs().as_f64())?;
    let s = match spec.sign {
        SineSign::Minus => -T::one(),
        SineSign::Plus => T::one(),
    };
    let pz = z * (pi * s);
    let term = |k: i64| -> Result<Complex<T>> {
        csc(p * (pi * T::int(2 * k)) + pz).ok_or(Error::SingularTerm { z: to_c64(z), k })
    };
    let mut acc = CompensatedSum::new();
    if spec.index_set == IndexSet::All {
        acc.add(term(0)?);
    }
    for k in 1..=k_terms as i64 {
        acc.add(term(k)? + term(-k)?);
    }
    finite(acc.value(), "reciprocal-sine sum")
}

/// Display form of a sigma log-derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogDerivForm {
    /// Difference of cot/tan values at `b_k +- x`.
    Cot,
    /// Single rational term `sin(pi z)/(cos^2 a - cos^2 x)` per k.
    Quotient,
    /// The sigma_2 cot/tan display transcribed literally (both terms equal,
    /// summed from k = 0); identical to [`LogDerivForm::Cot`] for j != 2.
    CotAsPrinted,
}

fn sum_terms<T: Real>(w: &Weierstrass<T>, x: Complex<T>) -> Result<usize> {
    let it = w.tau().im.as_f64();
    let rate = 2.0 * std::f64::consts::PI * it;
    w.policy()
        .decay_terms(rate, 2.0 * x.im.abs().as_f64() + std::f64::consts::PI * it)
}

fn singular<T: Real>(z: Complex<T>, k: i64) -> Error {
    Error::SingularTerm { z: to_c64(z), k }
}

/// `1/(cos^2 a - s)` without forming `cos^2 a`, which overflows for large k.
fn inv_cos2_minus<T: Real>(a: Complex<T>, s: Complex<T>) -> Option<Complex<T>> {
    let c = cos_scaled(a);
    let damp = (-c.log * T::lit(2.0)).exp();
    let den = c.mant * c.mant - s * damp;
    if den.norm() == T::zero() {
        return None;
    }
    Some(damp / den)
}

/// `sigma_j'/sigma_j(z)` (j = 0 is sigma itself) from the cot/tan sums.
pub fn sigma_logderiv_sum<T: Real>(
    w: &Weierstrass<T>,
    j: u8,
    z: Complex<T>,
    form: LogDerivForm,
) -> Result<Complex<T>> {
    if j > 3 {
        return Err(Error::InvalidIndex(format!("sigma index {j} not in 0..=3")));
    }
    let pi = T::PI();
    let half_pi = pi * T::lit(0.5);
    let x = z * half_pi;
    let k_terms = sum_terms(w, x)? as i64;
    let tau = w.tau();
    let b = |k: i64| tau * (pi * T::int(k));
    let a = |k: i64| tau * (pi * (T::int(k) - T::lit(0.5)));
    let sin_pz = (z * pi).sin();
    let (sx, cx) = (x.sin(), x.cos());
    let mut acc = CompensatedSum::new();
    let lead = match j {
        0 => cot(x).ok_or_else(|| singular(z, 0))? * half_pi,
        1 => -tan(x).ok_or_else(|| singular(z, 0))? * half_pi,
        _ => Complex::new(T::zero(), T::zero()),
    };
    acc.add(lead);
    let form = if j != 2 && form == LogDerivForm::CotAsPrinted {
        LogDerivForm::Cot
    } else {
        form
    };
    if j == 2 && form == LogDerivForm::CotAsPrinted {
        // -(pi/2) sum_{k>=0} [tan(a_k + x) - tan(a_k + x)]
        for k in 0..=k_terms {
            let t = tan(a(k) + x).ok_or_else(|| singular(z, k))?;
            acc.add(-(t - t) * half_pi);
        }
        return finite(acc.value() + w.eta1() * z, "sigma log-derivative sum");
    }
    for k in 1..=k_terms {
        let t = match (j, form) {
            (0, LogDerivForm::Cot) => {
                let (p, m) = cot(b(k) + x).zip(cot(b(k) - x)).ok_or_else(|| singular(z, k))?;
                (p - m) * half_pi
            }
            (0, _) => {
                let r = inv_cos2_minus(b(k), cx * cx).ok_or_else(|| singular(z, k))?;
                sin_pz * r * half_pi
            }
            (1, LogDerivForm::Cot) => {
                let (m, p) = tan(b(k) - x).zip(tan(b(k) + x)).ok_or_else(|| singular(z, k))?;
                (m - p) * half_pi
            }
            (1, _) => {
                let r = inv_cos2_minus(b(k), sx * sx).ok_or_else(|| singular(z, k))?;
                -sin_pz * r * half_pi
            }
            (2, LogDerivForm::Cot) => {
                let (m, p) = tan(a(k) - x).zip(tan(a(k) + x)).ok_or_else(|| singular(z, k))?;
                (m - p) * half_pi
            }
            (2, _) => {
                let r = inv_cos2_minus(a(k), sx * sx).ok_or_else(|| singular(z, k))?;
                -sin_pz * r * half_pi
            }
            (_, LogDerivForm::Cot) => {
                let (p, m) = cot(a(k) + x).zip(cot(a(k) - x)).ok_or_else(|| singular(z, k))?;
                (p - m) * half_pi
            }
            (_, _) => {
                let r = inv_cos2_minus(a(k), cx * cx).ok_or_else(|| singular(z, k))?;
                sin_pz * r * half_pi
            }
        };
        acc.add(t);
    }
    finite(acc.value() + w.eta1() * z, "sigma log-derivative sum")
}

/// The four sum/difference combinations
/// `[s1 - s0, s2 - s3, s1 + s0, s2 + s3]` with `s_j = sigma_j'/sigma_j`,
/// each from its own series.
///
/// The printed reading omits the `-pi/sin(pi z)` term in the first and
/// starts the second and fourth sums at k = 0.
pub fn sigma_logderiv_combos<T: Real>(
    w: &Weierstrass<T>,
    z: Complex<T>,
    reading: Reading,
) -> Result<[Complex<T>; 4]> {
    let pi = T::PI();
    let pz = z * pi;
    let tau = w.tau();
    let k_terms = sum_terms(w, pz * T::lit(0.5))? as i64;
    let even = |k: i64| tau * (pi * T::int(2 * k));
    let odd = |k: i64| tau * (pi * T::int(2 * k - 1));
    let first_odd = if reading.is_printed() { 0 } else { 1 };

    let mut d01 = CompensatedSum::new();
    if !reading.is_printed() {
        d01.add(-csc(pz).ok_or_else(|| singular(z, 0))? * pi);
    }
    let mut d23 = CompensatedSum::new();
    let mut s01 = CompensatedSum::new();
    s01.add(cot(pz).ok_or_else(|| singular(z, 0))? * pi);
    let mut s23 = CompensatedSum::new();
    for k in 1..=k_terms {
        let (m, p) = csc(even(k) - pz).zip(csc(even(k) + pz)).ok_or_else(|| singular(z, k))?;
        d01.add((m - p) * pi);
        let (p, m) = cot(even(k) + pz).zip(cot(even(k) - pz)).ok_or_else(|| singular(z, k))?;
        s01.add((p - m) * pi);
    }
    for k in first_odd..=k_terms {
        let (m, p) = csc(odd(k) - pz).zip(csc(odd(k) + pz)).ok_or_else(|| singular(z, k))?;
        d23.add((m - p) * pi);
        let (p, m) = cot(odd(k) + pz).zip(cot(odd(k) - pz)).ok_or_else(|| singular(z, k))?;
        s23.add((p - m) * pi);
    }
    let two_eta_z = w.eta1() * z * T::lit(2.0);
    Ok([
        finite(d01.value(), "combo")?,
        finite(d23.value(), "combo")?,
        finite(s01.value() + two_eta_z, "combo")?,
        finite(s23.value() + two_eta_z, "combo")?,
    ])
}

/// Reciprocal-sine sum attached to the half-period `omega_alpha`:
///
/// ```text
/// alpha = 1:  S(z; tau)
/// alpha = 3:  S(z/tau; -1/tau)/tau               (printed: S(z; -1/tau))
/// alpha = 2:  S(z/(1+tau); -1/(1+tau))/(1+tau)   (printed: S(z; -1/(1+tau)))
/// ```
///
/// all with the `+` sign convention, so that
/// `wp'/(wp - e_alpha) = -2 pi S_alpha` in the corrected reading.
pub fn modular_sine_sum<T: Real>(
    w: &Weierstrass<T>,
    alpha: HalfPeriodIndex,
    z: Complex<T>,
    index_set: IndexSet,
    reading: Reading,
) -> Result<Complex<T>> {
    let one = Complex::new(T::one(), T::zero());
    let t = match alpha.get() {
        1 => one,
        2 => one + w.tau(),
        _ => w.tau(),
    };
    let phase = if alpha.get() == 1 { w.tau() } else { -one / t };
    let spec = SineSumSpec::new(phase, SineSign::Plus, index_set)?;
    match reading {
        Reading::AsPrinted => sin_reciprocal_sum(z, &spec, w.policy()),
        Reading::Corrected => Ok(sin_reciprocal_sum(z / t, &spec, w.policy())? / t),
    }
}

/// `wp(z) - e_j` as `pi^2` times the product of two modular sums.
pub fn wp_from_double_sum<T: Real>(
    w: &Weierstrass<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
    reading: Reading,
) -> Result<Complex<T>> {
    let (a, b) = j.others();
    let sa = modular_sine_sum(w, a, z, IndexSet::All, reading)?;
    let sb = modular_sine_sum(w, b, z, IndexSet::All, reading)?;
    finite(sa * sb * (T::PI() * T::PI()), "double sum")
}

/// `wp'(z) = -2 pi^3 S_1 S_2 S_3`.
pub fn wp_prime_from_triple_sum<T: Real>(
    w: &Weierstrass<T>,
    z: Complex<T>,
    reading: Reading,
) -> Result<Complex<T>> {
    let mut prod = Complex::new(T::one(), T::zero());
    for a in HalfPeriodIndex::ALL {
        prod = prod * modular_sine_sum(w, a, z, IndexSet::All, reading)?;
    }
    finite(prod * (-T::lit(2.0) * T::PI().powi(3)), "triple sum")
}

/// `xi_{alpha 0}'/xi_{alpha 0}(z) = -pi S_alpha(z)`. The printed reading sums
/// over k != 0 without rescaling the argument.
pub fn xi_logderiv_sum<T: Real>(
    w: &Weierstrass<T>,
    alpha: HalfPeriodIndex,
    z: Complex<T>,
    reading: Reading,
) -> Result<Complex<T>> {
    let set = match reading {
        Reading::AsPrinted => IndexSet::NonZero,
        Reading::Corrected => IndexSet::All,
    };
    Ok(-modular_sine_sum(w, alpha, z, set, reading)? * T::PI())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn w(re: f64, im: f64) -> Weierstrass<f64> {
        Weierstrass::new(Complex64::new(re, im), TruncationPolicy::default()).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / (1.0 + a.norm().max(b.norm()))
    }

    #[test]
    fn full_sum_is_log_derivative() {
        let w = w(0.15, 1.1);
        let z = Complex64::new(0.42, 0.3);
        let spec = SineSumSpec::new(w.tau(), SineSign::Minus, IndexSet::All).unwrap();
        let s = sin_reciprocal_sum(z, &spec, w.policy()).unwrap() * (2.0 * std::f64::consts::PI);
        let j1 = HalfPeriodIndex::ONE;
        let oracle = w.wp_prime(z).unwrap() / w.wp_minus_e(j1, z).unwrap();
        assert!(rel(s, oracle) < 1e-12);
    }

    #[test]
    fn strip_is_enforced() {
        let spec = SineSumSpec::new(Complex64::new(0.0, 1.0), SineSign::Plus, IndexSet::All).unwrap();
        let r = sin_reciprocal_sum(Complex64::new(0.1, 2.5), &spec, &TruncationPolicy::default());
        assert!(matches!(r, Err(Error::StripViolation { .. })));
    }

    #[test]
    fn sigma_logderivs_match_oracle() {
        let w = w(-0.2, 0.9);
        let z = Complex64::new(0.37, -0.22);
        for j in 0..=3u8 {
            let o = w.sigma_logderiv(j, z).unwrap();
            for f in [LogDerivForm::Cot, LogDerivForm::Quotient] {
                let s = sigma_logderiv_sum(&w, j, z, f).unwrap();
                assert!(rel(s, o) < 1e-12, "j = {j}, form = {f:?}");
            }
        }
        let printed = sigma_logderiv_sum(&w, 2, z, LogDerivForm::CotAsPrinted).unwrap();
        assert!(rel(printed, w.eta1() * z) < 1e-15);
    }

    #[test]
    fn combos_match_oracle() {
        let w = w(0.3, 1.2);
        let z = Complex64::new(0.51, 0.18);
        let s: Vec<_> = (0..=3).map(|j| w.sigma_logderiv(j, z).unwrap()).collect();
        let c = sigma_logderiv_combos(&w, z, Reading::Corrected).unwrap();
        let want = [s[1] - s[0], s[2] - s[3], s[1] + s[0], s[2] + s[3]];
        for i in 0..4 {
            assert!(rel(c[i], want[i]) < 1e-12, "combo {i}");
        }
    }

    #[test]
    fn modular_sums() {
        let w = w(0.1, 1.2);
        let z = Complex64::new(0.28, 0.11);
        for j in HalfPeriodIndex::ALL {
            let d = wp_from_double_sum(&w, j, z, Reading::Corrected).unwrap();
            assert!(rel(d, w.wp_minus_e(j, z).unwrap()) < 1e-11, "j = {j:?}");
            let x = xi_logderiv_sum(&w, j, z, Reading::Corrected).unwrap();
            let o = w.wp_prime(z).unwrap() / (w.wp_minus_e(j, z).unwrap() * 2.0);
            assert!(rel(x, o) < 1e-11);
        }
        let t = wp_prime_from_triple_sum(&w, z, Reading::Corrected).unwrap();
        assert!(rel(t, w.wp_prime(z).unwrap()) < 1e-11);
    }
}
