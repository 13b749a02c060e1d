//! Infinite-product representations of `wp - e_j`, `wp'`, the sigma
//! functions and the pairwise e-differences.
//!
//! Writing `x = pi z / 2` and `b_k = k pi tau`, `a_k = (k - 1/2) pi tau`:
//!
//! ```text
//! wp - e1 = (pi cot x)^2/4 prod_{k>=1} [cot(b_k - x) cot(b_k + x)/cot^2 b_k]^2
//! wp - e3 = pi^2/(2 sin x)^2 prod_{k>=1} [sin(a_k - x) sin(a_k + x)/(sin(b_k - x) sin(b_k + x))]^2
//!                                        [sin b_k/sin a_k]^4
//! wp - e2 = same with cos(a_k -+ x) in the numerator and cos a_k in the last factor
//! ```
//!
//! Every factor tends to 1 like `|q|^{2k}`. Factors are accumulated as
//! [`Scaled`] values so that `sin(b_k +- x)`, which grows like `|q|^{-k}`, is
//! never formed explicitly.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lattice::reduce_to_cell;
use crate::numerics::{cos_scaled, cot, sin_scaled, tan, Product, Scaled};
use crate::scalar::{powi, to_c64, Real};
use crate::weierstrass::{finite, HalfPeriodIndex, Weierstrass};

/// Gauge factor in front of the sigma products.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaGauge {
    /// `exp(2 eta v^2) = exp(eta z^2/2)`, which gives sigma'(0) = 1.
    Schwarz,
    /// `exp(eta v^2/2)`, the alternative exponent.
    QuarterExponent,
}

/// First index of the half-shift products for sigma_2 and sigma_3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductStart {
    One,
    Zero,
}

/// Constant in front of the `wp'` sine product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpPrimeConstant {
    /// Bare `-1`.
    One,
    /// `-pi^3`.
    Pi3,
    /// `-pi^3/8`; the value consistent with `wp' = -2 f1 f2 f3`.
    Pi3Over8,
}

impl WpPrimeConstant {
    fn value<T: Real>(self) -> T {
        let p3 = T::PI() * T::PI() * T::PI();
        match self {
            Self::One => T::one(),
            Self::Pi3 => p3,
            Self::Pi3Over8 => p3 / T::lit(8.0),
        }
    }
}

fn c<T: Real>(x: f64) -> Complex<T> {
    Complex::new(T::lit(x), T::zero())
}

/// Number of product factors for arguments `k pi tau +- shift`.
fn factor_count<T: Real>(w: &Weierstrass<T>, shift: Complex<T>) -> Result<usize> {
    let rate = 2.0 * std::f64::consts::PI * w.tau().im.as_f64();
    w.policy().decay_terms(rate, 2.0 * shift.im.abs().as_f64())
}

fn b_k<T: Real>(w: &Weierstrass<T>, k: usize) -> Complex<T> {
    w.tau() * (T::PI() * T::int(k as i64))
}

fn a_k<T: Real>(w: &Weierstrass<T>, k: i64) -> Complex<T> {
    w.tau() * (T::PI() * (T::int(k) - T::lit(0.5)))
}

fn singular<T: Real>(z: Complex<T>, k: usize) -> Error {
    Error::SingularTerm {
        z: to_c64(z),
        k: k as i64,
    }
}

/// `wp(z) - e_j` from the trigonometric products (cot form for j = 1,
/// half-shift forms for j = 2, 3).
pub fn wp_minus_e_product<T: Real>(
    w: &Weierstrass<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
) -> Result<Complex<T>> {
    match j.get() {
        1 => wp_minus_e1_cot_product(w, z),
        _ => wp_minus_e_half_product(w, j, z, 4),
    }
}

/// The normalised cot product for `wp - e1`.
pub fn wp_minus_e1_cot_product<T: Real>(w: &Weierstrass<T>, z: Complex<T>) -> Result<Complex<T>> {
    let r = reduce_to_cell(z, w.lattice())?.reduced;
    let x = r * (T::PI() * T::lit(0.5));
    let k_terms = factor_count(w, x)?;
    let mut prod = Product::new();
    for k in 1..=k_terms {
        let b = b_k(w, k);
        let num = cot(b - x).zip(cot(b + x)).ok_or_else(|| singular(z, k))?;
        let cb = cot(b).ok_or_else(|| singular(z, k))?;
        let f = num.0 * num.1 / (cb * cb);
        prod.mul(f * f);
    }
    let lead = cot(x).ok_or_else(|| singular(z, 0))? * T::PI();
    finite(lead * lead * T::lit(0.25) * prod.value(), "wp - e1 product")
}

/// `wp - e1` with the cot normalisation pulled out as a theta-null
/// prefactor: `(pi^p theta3(0) theta4(0) cot x)^2/4 prod [cot(b_k - x) cot(b_k + x)]^2`.
/// `pi_power = 1` is the exact form.
pub fn wp_minus_e1_theta_prefactor<T: Real>(
    w: &Weierstrass<T>,
    z: Complex<T>,
    pi_power: i32,
) -> Result<Complex<T>> {
    let r = reduce_to_cell(z, w.lattice())?.reduced;
    let x = r * (T::PI() * T::lit(0.5));
    let k_terms = factor_count(w, x)?;
    let mut prod = Product::new();
    for k in 1..=k_terms {
        let b = b_k(w, k);
        let (c1, c2) = cot(b - x).zip(cot(b + x)).ok_or_else(|| singular(z, k))?;
        let f = c1 * c2;
        prod.mul(f * f);
    }
    let nulls = w.theta_null(crate::ThetaIndex::THREE) * w.theta_null(crate::ThetaIndex::FOUR);
    let lead = cot(x).ok_or_else(|| singular(z, 0))? * nulls * T::PI().powi(pi_power);
    finite(lead * lead * T::lit(0.25) * prod.value(), "wp - e1 theta-prefactor product")
}

/// Half-shift product for `wp - e_j`, j in {2, 3}, with the last factor
/// raised to `last_exponent` (4 is exact).
pub fn wp_minus_e_half_product<T: Real>(
    w: &Weierstrass<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
    last_exponent: i32,
) -> Result<Complex<T>> {
    let trig: fn(Complex<T>) -> Scaled<T> = match j.get() {
        2 => cos_scaled,
        3 => sin_scaled,
        _ => {
            return Err(Error::InvalidIndex(
                "half-shift product needs j in {2, 3}".into(),
            ))
        }
    };
    let r = reduce_to_cell(z, w.lattice())?.reduced;
    let x = r * (T::PI() * T::lit(0.5));
    let k_terms = factor_count(w, x)?;
    let mut prod = Product::new();
    for k in 1..=k_terms {
        let a = a_k(w, k as i64);
        let b = b_k(w, k);
        let num = trig(a - x) * trig(a + x);
        let den = sin_scaled(b - x) * sin_scaled(b + x);
        if den.mant.norm() == T::zero() {
            return Err(singular(z, k));
        }
        prod.mul_scaled((num / den).powi(2));
        prod.mul_scaled((sin_scaled(b) / trig(a)).powi(last_exponent));
    }
    let s = sin_scaled(x).value() * T::lit(2.0);
    if s.norm() == T::zero() {
        return Err(singular(z, 0));
    }
    finite(
        prod.value() * (T::PI() * T::PI()) / (s * s),
        "wp - e_j half-shift product",
    )
}

fn gauge<T: Real>(w: &Weierstrass<T>, z: Complex<T>, g: SigmaGauge) -> Complex<T> {
    let v = z * T::lit(0.5);
    match g {
        SigmaGauge::Schwarz => (w.eta1() * v * v * T::lit(2.0)).exp(),
        SigmaGauge::QuarterExponent => (w.eta1() * v * v * T::lit(0.5)).exp(),
    }
}

/// sigma(z) from the sine product `(2/pi) sin x prod sin(b_k - x) sin(b_k + x)/sin^2 b_k`.
pub fn sigma_product<T: Real>(
    w: &Weierstrass<T>,
    z: Complex<T>,
    g: SigmaGauge,
) -> Result<Complex<T>> {
    let x = z * (T::PI() * T::lit(0.5));
    let k_terms = factor_count(w, x)?;
    let mut prod = Product::new();
    prod.mul_scaled(sin_scaled(x));
    for k in 1..=k_terms {
        let b = b_k(w, k);
        prod.mul_scaled(sin_scaled(b - x) * sin_scaled(b + x) / sin_scaled(b).powi(2));
    }
    finite(
        prod.value() * gauge(w, z, g) * T::lit(2.0) / T::PI(),
        "sigma product",
    )
}

/// sigma_j(z) from the cosine/half-shift products.
pub fn sigma_j_product<T: Real>(
    w: &Weierstrass<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
    start: ProductStart,
    g: SigmaGauge,
) -> Result<Complex<T>> {
    let x = z * (T::PI() * T::lit(0.5));
    let k_terms = factor_count(w, x)?;
    let mut prod = Product::new();
    match j.get() {
        1 => {
            prod.mul_scaled(cos_scaled(x));
            for k in 1..=k_terms {
                let b = b_k(w, k);
                prod.mul_scaled(cos_scaled(b - x) * cos_scaled(b + x) / cos_scaled(b).powi(2));
            }
        }
        jj => {
            let trig: fn(Complex<T>) -> Scaled<T> = if jj == 2 { cos_scaled } else { sin_scaled };
            let first = match start {
                ProductStart::One => 1,
                ProductStart::Zero => 0,
            };
            for k in first..=k_terms as i64 {
                let a = a_k(w, k);
                prod.mul_scaled(trig(a - x) * trig(a + x) / trig(a).powi(2));
            }
        }
    }
    finite(prod.value() * gauge(w, z, g), "sigma_j product")
}

/// `wp'(u)` from the sine product with `v = u/2`:
///
/// ```text
/// wp'(u) = -C sin(2 pi v)/sin^4(pi v)
///          prod sin(b_k + 2 pi v) sin(b_k - 2 pi v) sin^6 b_k/[sin(b_k + pi v) sin(b_k - pi v)]^4
/// ```
pub fn wp_prime_product_with<T: Real>(
    w: &Weierstrass<T>,
    u: Complex<T>,
    constant: WpPrimeConstant,
) -> Result<Complex<T>> {
    let r = reduce_to_cell(u, w.lattice())?.reduced;
    let x = r * (T::PI() * T::lit(0.5));
    let x2 = x * T::lit(2.0);
    let k_terms = factor_count(w, x2)?;
    let mut prod = Product::new();
    prod.mul_scaled(sin_scaled(x2));
    prod.div_scaled(sin_scaled(x).powi(4));
    for k in 1..=k_terms {
        let b = b_k(w, k);
        let num = sin_scaled(b + x2) * sin_scaled(b - x2) * sin_scaled(b).powi(6);
        let den = (sin_scaled(b + x) * sin_scaled(b - x)).powi(4);
        if den.mant.norm() == T::zero() {
            return Err(singular(u, k));
        }
        prod.mul_scaled(num / den);
    }
    finite(-prod.value() * constant.value::<T>(), "wp' product")
}

/// `wp'(u)` from the sine product with the constant `-pi^3/8`.
pub fn wp_prime_product<T: Real>(w: &Weierstrass<T>, u: Complex<T>) -> Result<Complex<T>> {
    wp_prime_product_with(w, u, WpPrimeConstant::Pi3Over8)
}

/// `wp(z + 1)` from the tan product
/// `e1 + (pi tan x)^2/4 prod [tan(b_k - x) tan(b_k + x)/cot^2 b_k]^2`.
pub fn wp_shift_tan_product<T: Real>(w: &Weierstrass<T>, z: Complex<T>) -> Result<Complex<T>> {
    let r = reduce_to_cell(z + Complex::new(T::one(), T::zero()), w.lattice())?;
    let r = r.reduced - Complex::new(T::one(), T::zero());
    let x = r * (T::PI() * T::lit(0.5));
    let k_terms = factor_count(w, x)?;
    let mut prod = Product::new();
    for k in 1..=k_terms {
        let b = b_k(w, k);
        let (t1, t2) = tan(b - x).zip(tan(b + x)).ok_or_else(|| singular(z, k))?;
        let cb = cot(b).ok_or_else(|| singular(z, k))?;
        let f = t1 * t2 / (cb * cb);
        prod.mul(f * f);
    }
    let lead = tan(x).ok_or_else(|| singular(z, 0))? * T::PI();
    finite(
        w.e(HalfPeriodIndex::ONE) + lead * lead * T::lit(0.25) * prod.value(),
        "wp(z+1) tan product",
    )
}

/// `prod_{k>=1} cot^{-8}(k pi p)` for any p off the real axis.
fn cot8_product<T: Real>(w: &Weierstrass<T>, p: Complex<T>) -> Result<Complex<T>> {
    let rate = 2.0 * std::f64::consts::PI * p.im.abs().as_f64();
    let k_terms = w.policy().decay_terms(rate, 0.0)?;
    let mut prod = Product::new();
    for k in 1..=k_terms {
        let ct = cot(p * (T::PI() * T::int(k as i64)))
            .ok_or(Error::DivisionDegeneracy("cot(k pi p) pole"))?;
        prod.div(powi(ct, 8));
    }
    Ok(prod.value())
}

/// The three pairwise products
/// `[(e1-e2)(e1-e3), (e3-e2)(e3-e1), (e2-e1)(e2-e3)]` as
/// `(pi^4/16) p^{-4} prod cot^{-8}(k pi/p)` with `p = 1, tau, 1 + tau`
/// (the first uses `prod cot^{-8}(k pi tau)`).
pub fn e_pairwise_products<T: Real>(w: &Weierstrass<T>) -> Result<[Complex<T>; 3]> {
    let one = c::<T>(1.0);
    let tau = w.tau();
    let pre = T::PI().powi(4) / T::lit(16.0);
    let p1 = cot8_product(w, tau)? * pre;
    let p3 = cot8_product(w, one / tau)? * pre / powi(tau, 4);
    let p2 = cot8_product(w, one / (one + tau))? * pre / powi(one + tau, 4);
    Ok([
        finite(p1, "pairwise product")?,
        finite(p3, "pairwise product")?,
        finite(p2, "pairwise product")?,
    ])
}

/// The pairwise products read literally as `prod_{k=1}^{K} 1/(16 cot^8(k pi p))`
/// with K from the policy. The infinite product diverges to zero, so the
/// value depends on K; it exists so that the reading can be falsified.
pub fn e_pairwise_products_literal<T: Real>(w: &Weierstrass<T>) -> Result<[Complex<T>; 3]> {
    let one = c::<T>(1.0);
    let tau = w.tau();
    let k_terms = w.policy().terms(w.lattice().q_abs().as_f64())?;
    let lit = |p: Complex<T>| -> Result<Complex<T>> {
        let mut prod = Product::new();
        for k in 1..=k_terms {
            let ct = cot(p * (T::PI() * T::int(k as i64)))
                .ok_or(Error::DivisionDegeneracy("cot(k pi p) pole"))?;
            prod.div(powi(ct, 8) * T::lit(16.0));
        }
        Ok(prod.value())
    };
    Ok([lit(tau)?, lit(one / tau)?, lit(one / (one + tau))?])
}
