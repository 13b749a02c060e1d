//! Functions reachable from the command line.

use std::fmt;
use std::str::FromStr;

use wp_products::products::{sigma_j_product, sigma_product, wp_minus_e_product, wp_prime_product, ProductStart, SigmaGauge};
use wp_products::scalar::{cplx, to_c64};
use wp_products::xi::{moduli, xi};
use wp_products::{
    Complex, Complex64, HalfPeriodIndex, Real, Result, ThetaIndex, TruncationPolicy, Weierstrass,
    XiIndex,
};

pub const NAMES: &str =
    "wp, wp_prime, sigma, sigma1..3, zeta, theta1..4, xi.<b>.<g>, e1..3, eta, k, kprime";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Function {
    Wp,
    WpPrime,
    Sigma,
    SigmaJ(HalfPeriodIndex),
    Zeta,
    /// `theta_j(z)` in the period-1 convention.
    Theta(ThetaIndex),
    Xi(XiIndex),
    E(HalfPeriodIndex),
    Eta,
    K,
    KPrime,
}

impl FromStr for Function {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bad = || format!("unknown function {s:?}; expected one of {NAMES}");
        let digit = |rest: &str| -> Option<u8> {
            (rest.len() == 1).then(|| rest.parse().ok()).flatten()
        };
        let half = |rest: &str| digit(rest).and_then(|j| HalfPeriodIndex::new(j).ok());
        Ok(match s {
            "wp" => Self::Wp,
            "wp_prime" => Self::WpPrime,
            "sigma" => Self::Sigma,
            "zeta" => Self::Zeta,
            "eta" => Self::Eta,
            "k" => Self::K,
            "kprime" => Self::KPrime,
            _ => {
                if let Some(r) = s.strip_prefix("sigma") {
                    Self::SigmaJ(half(r).ok_or_else(bad)?)
                } else if let Some(r) = s.strip_prefix("theta") {
                    Self::Theta(digit(r).and_then(|j| ThetaIndex::new(j).ok()).ok_or_else(bad)?)
                } else if let Some(r) = s.strip_prefix('e') {
                    Self::E(half(r).ok_or_else(bad)?)
                } else if let Some(r) = s.strip_prefix("xi.") {
                    let (b, g) = r.split_once('.').ok_or_else(bad)?;
                    let (b, g) = digit(b).zip(digit(g)).ok_or_else(bad)?;
                    Self::Xi(XiIndex::new(b, g).map_err(|e| e.to_string())?)
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Wp => write!(f, "wp"),
            Self::WpPrime => write!(f, "wp_prime"),
            Self::Sigma => write!(f, "sigma"),
            Self::SigmaJ(j) => write!(f, "sigma{}", j.get()),
            Self::Zeta => write!(f, "zeta"),
            Self::Theta(j) => write!(f, "theta{}", j.get()),
            Self::Xi(i) => write!(f, "xi.{}.{}", i.beta(), i.gamma()),
            Self::E(j) => write!(f, "e{}", j.get()),
            Self::Eta => write!(f, "eta"),
            Self::K => write!(f, "k"),
            Self::KPrime => write!(f, "kprime"),
        }
    }
}

/// Value of `f` at `(z, tau)` in precision `T`, and the number of theta
/// terms the policy chose.
pub fn eval<T: Real>(f: Function, z: Complex64, tau: Complex64, policy: TruncationPolicy) -> Result<(Complex64, usize)> {
    let w = Weierstrass::<T>::new(cplx(tau.re, tau.im), policy)?;
    let k = policy.terms(w.lattice().q_abs().as_f64())?;
    let z: Complex<T> = cplx(z.re, z.im);
    let v = match f {
        Function::Wp => w.wp(z)?,
        Function::WpPrime => w.wp_prime(z)?,
        Function::Sigma => w.sigma(z)?,
        Function::SigmaJ(j) => w.sigma_j(j, z)?,
        Function::Zeta => w.zeta(z)?,
        Function::Theta(j) => w.theta(j, z)?,
        Function::Xi(i) => xi(&w, i, z)?,
        Function::E(j) => w.e(j),
        Function::Eta => w.eta1(),
        Function::K => moduli(&w)?.0,
        Function::KPrime => moduli(&w)?.1,
    };
    Ok((to_c64(v), k))
}

/// Like [`eval`], but `wp`, `wp_prime` and the sigmas come from their
/// trigonometric products, so a fixed-term policy truncates the product.
pub fn eval_product<T: Real>(f: Function, z: Complex64, tau: Complex64, policy: TruncationPolicy) -> Result<Complex64> {
    let w = Weierstrass::<T>::new(cplx(tau.re, tau.im), policy)?;
    let zt: Complex<T> = cplx(z.re, z.im);
    let v = match f {
        Function::Wp => w.e(HalfPeriodIndex::ONE) + wp_minus_e_product(&w, HalfPeriodIndex::ONE, zt)?,
        Function::WpPrime => wp_prime_product(&w, zt)?,
        Function::Sigma => sigma_product(&w, zt, SigmaGauge::Schwarz)?,
        Function::SigmaJ(j) => sigma_j_product(&w, j, zt, ProductStart::One, SigmaGauge::Schwarz)?,
        _ => return eval::<T>(f, z, tau, policy).map(|(v, _)| v),
    };
    Ok(to_c64(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in ["wp", "wp_prime", "sigma", "sigma2", "zeta", "theta4", "xi.2.3", "xi.0.1", "e3", "eta", "k", "kprime"] {
            assert_eq!(s.parse::<Function>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn rejects_unknown_names() {
        for s in ["", "wp2", "sigma4", "sigma0", "theta0", "theta5", "e0", "xi.1.1", "xi.4.0", "xi.12", "xi.1.0.0"] {
            assert!(s.parse::<Function>().is_err(), "{s}");
        }
    }
}
