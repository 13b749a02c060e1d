//! The twelve quotients `xi_{beta gamma} = sigma_beta/sigma_gamma`
//! (index 0 meaning sigma itself), their derivatives and the moduli.
//!
//! All values come from the sigma quotients `f_j = sigma_j/sigma`, so no
//! square-root branch is ever chosen.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lattice::{reduce_unchecked, POLE_GUARD};
use crate::scalar::{to_c64, Real};
use crate::theta::ThetaIndex;
use crate::weierstrass::{finite, quotient_sign_flips, HalfPeriodIndex, Weierstrass};

/// Ordered pair `(beta, gamma)` of distinct indices in `0..=3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct XiIndex {
    beta: u8,
    gamma: u8,
}

impl XiIndex {
    pub fn new(beta: u8, gamma: u8) -> Result<Self> {
        if beta > 3 || gamma > 3 || beta == gamma {
            return Err(Error::InvalidIndex(format!(
                "xi index ({beta}, {gamma}) needs distinct entries in 0..=3"
            )));
        }
        Ok(Self { beta, gamma })
    }

    pub fn beta(self) -> u8 {
        self.beta
    }

    pub fn gamma(self) -> u8 {
        self.gamma
    }

    /// The reciprocal quotient `(gamma, beta)`.
    pub fn swap(self) -> Self {
        Self {
            beta: self.gamma,
            gamma: self.beta,
        }
    }

    /// All twelve indices in lexicographic order.
    pub fn all() -> impl Iterator<Item = Self> {
        (0..4u8).flat_map(|b| (0..4u8).filter(move |&g| g != b).map(move |g| Self { beta: b, gamma: g }))
    }
}

impl fmt::Display for XiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.beta, self.gamma)
    }
}

/// The nonzero index not in `{a, b}` (both nonzero and distinct).
fn third(a: u8, b: u8) -> u8 {
    6 - a - b
}

fn hp(j: u8) -> HalfPeriodIndex {
    HalfPeriodIndex::new(j).expect("nonzero index")
}

/// Zero set of sigma_j: the lattice shifted by omega_j (omega_0 = 0).
fn check_zero<T: Real>(w: &Weierstrass<T>, j: u8, u: Complex<T>) -> Result<()> {
    let shift = if j == 0 {
        Complex::new(T::zero(), T::zero())
    } else {
        hp(j).omega(w.lattice())
    };
    let p = reduce_unchecked(u - shift, w.lattice());
    let lat = w.lattice();
    let mut best = T::infinity();
    for a in -1..=1 {
        for b in -1..=1 {
            best = best.min((p.reduced - lat.point(a, b)).norm());
        }
    }
    if best <= T::lit(POLE_GUARD) {
        return Err(Error::PoleProximity {
            z: to_c64(u),
            lattice_point: to_c64(u - p.reduced),
            distance: best.as_f64(),
        });
    }
    Ok(())
}

/// `xi_{beta gamma}(u)`.
pub fn xi<T: Real>(w: &Weierstrass<T>, idx: XiIndex, u: Complex<T>) -> Result<Complex<T>> {
    check_zero(w, idx.gamma, u)?;
    let (b, g) = (idx.beta, idx.gamma);
    if b == 0 {
        return finite(Complex::new(T::one(), T::zero()) / w.quotient(hp(g), u)?, "xi");
    }
    if g == 0 {
        return w.quotient(hp(b), u);
    }
    // sigma_b/sigma_g = theta_{b+1}(v) theta_{g+1}(0)/(theta_{g+1}(v) theta_{b+1}(0))
    let p = reduce_unchecked(u, w.lattice());
    let v = p.reduced * T::lit(0.5);
    let (tb, tg) = (hp(b).theta(), hp(g).theta());
    let num = w.theta(tb, v)? * w.theta_null(tg);
    let den = w.theta(tg, v)? * w.theta_null(tb);
    let mut r = num / den;
    if quotient_sign_flips(hp(b), p.shifts) != quotient_sign_flips(hp(g), p.shifts) {
        r = -r;
    }
    finite(r, "xi")
}

/// `xi_{beta gamma}'(u)` from the closed forms
///
/// ```text
/// xi_{a0}'  = -xi_{b0} xi_{c0}
/// xi_{0a}'  =  xi_{ba} xi_{ca}
/// xi_{bc}'  = -(e_b - e_c) xi_{0c} xi_{ac}
/// ```
/// with `{a, b, c} = {1, 2, 3}`.
pub fn xi_prime<T: Real>(w: &Weierstrass<T>, idx: XiIndex, u: Complex<T>) -> Result<Complex<T>> {
    let x = |b: u8, g: u8| xi(w, XiIndex { beta: b, gamma: g }, u);
    let (b, g) = (idx.beta, idx.gamma);
    let v = if g == 0 {
        let (p, q) = hp(b).others();
        -x(p.get() as u8, 0)? * x(q.get() as u8, 0)?
    } else if b == 0 {
        let (p, q) = hp(g).others();
        x(p.get() as u8, g)? * x(q.get() as u8, g)?
    } else {
        let a = third(b, g);
        let de = w.e_difference(hp(b), hp(g));
        -de * x(0, g)? * x(a, g)?
    };
    finite(v, "xi'")
}

/// Logarithmic derivative `xi'/xi`.
pub fn xi_logderiv<T: Real>(w: &Weierstrass<T>, idx: XiIndex, u: Complex<T>) -> Result<Complex<T>> {
    check_zero(w, idx.beta, u)?;
    finite(xi_prime(w, idx, u)? / xi(w, idx, u)?, "xi'/xi")
}

/// The moduli `k = xi_{21}(omega_3)` and `k' = xi_{23}(omega_1)`, evaluated
/// directly at the half-periods (neither is a zero of the denominator).
pub fn moduli<T: Real>(w: &Weierstrass<T>) -> Result<(Complex<T>, Complex<T>)> {
    let lat = w.lattice();
    let k = xi(w, XiIndex { beta: 2, gamma: 1 }, HalfPeriodIndex::THREE.omega(lat))?;
    let kp = xi(w, XiIndex { beta: 2, gamma: 3 }, HalfPeriodIndex::ONE.omega(lat))?;
    Ok((k, kp))
}

/// Classical modulus `theta2(0)^2/theta3(0)^2`, independent of [`moduli`].
pub fn modulus_from_theta<T: Real>(w: &Weierstrass<T>) -> Complex<T> {
    let r = w.theta_null(ThetaIndex::TWO) / w.theta_null(ThetaIndex::THREE);
    r * r
}
