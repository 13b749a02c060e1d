//! Odd-order transformations: relations between data on the lattice
//! `(2, 2 tau)` and on `(2, 2 n tau)` or `(2, 2 (tau + 2p)/n)`.
//!
//! Every operation returns the values of all expressions of one relation at a
//! single point, so that callers can compare them. Two knobs select between
//! readings of a relation:
//!
//! * [`Reading`] switches constants, index ranges and argument scalings
//!   between the literal display and the verified form;
//! * [`ShiftUnit`] chooses the shift `s_m` in products over `z + s_m`.
//!
//! The verified forms use `s_m = 2m/n`, which are the `n`-division points of
//! the real period 2.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::numerics::cot;
use crate::reading::Reading;
use crate::scalar::{powi, to_c64, Real};
use crate::sums::{modular_sine_sum, sin_reciprocal_sum, IndexSet, SineSign, SineSumSpec};
use crate::theta::ThetaIndex;
use crate::weierstrass::{finite, HalfPeriodIndex, Weierstrass};
use crate::xi::{xi, xi_logderiv, XiIndex};
use crate::TruncationPolicy;

/// Largest order accepted by [`TransformOrder::new`].
pub const MAX_ORDER: u32 = 15;

/// Odd order `n` and, for [`TransformMode::TauPlus2pOverN`], the offset `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TransformOrder {
    n: u32,
    p: i64,
}

impl TransformOrder {
    pub fn new(n: i64) -> Result<Self> {
        Self::with_offset(n, 0)
    }

    pub fn with_offset(n: i64, p: i64) -> Result<Self> {
        if n < 1 || n % 2 == 0 || n > MAX_ORDER as i64 {
            return Err(Error::InvalidOrder { n, max: MAX_ORDER });
        }
        Ok(Self { n: n as u32, p })
    }

    pub fn n(self) -> u32 {
        self.n
    }

    pub fn p(self) -> i64 {
        self.p
    }

    /// `(-1)^{(n-1)/2}`.
    pub fn half_sign(self) -> i32 {
        if (self.n / 2) % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

/// Which modular parameter the target lattice carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformMode {
    /// `n tau`, arguments scaled to `n z`.
    NTau,
    /// `tau/n`.
    TauOverN,
    /// `(tau + 2p)/n`.
    TauPlus2pOverN,
}

/// Shift unit in products and sums over `z + s_m`, `m = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftUnit {
    /// `s_m = 2m/n`
    TwoOverN,
    /// `s_m = m/n`
    OneOverN,
    /// `s_m = 2 m pi/n`
    TwoPiOverN,
    /// `s_m = m pi/n`
    PiOverN,
}

impl ShiftUnit {
    pub fn label(self) -> &'static str {
        match self {
            Self::TwoOverN => "2m/n",
            Self::OneOverN => "m/n",
            Self::TwoPiOverN => "2m*pi/n",
            Self::PiOverN => "m*pi/n",
        }
    }

    pub fn shift<T: Real>(self, m: u32, n: u32) -> Complex<T> {
        let r = T::int(m as i64) / T::int(n as i64);
        let s = match self {
            Self::TwoOverN => r * T::lit(2.0),
            Self::OneOverN => r,
            Self::TwoPiOverN => r * T::lit(2.0) * T::PI(),
            Self::PiOverN => r * T::PI(),
        };
        Complex::new(s, T::zero())
    }
}

/// A base lattice together with its transformed lattice.
#[derive(Debug, Clone)]
pub struct Transform<T: Real> {
    order: TransformOrder,
    mode: TransformMode,
    base: Weierstrass<T>,
    target: Weierstrass<T>,
}

impl<T: Real> Transform<T> {
    pub fn new(
        tau: Complex<T>,
        order: TransformOrder,
        mode: TransformMode,
        policy: TruncationPolicy,
    ) -> Result<Self> {
        let base = Weierstrass::new(tau, policy)?;
        let n = T::int(order.n as i64);
        let target_tau = match mode {
            TransformMode::NTau => tau * n,
            TransformMode::TauOverN => tau / n,
            TransformMode::TauPlus2pOverN => (tau + T::int(2 * order.p)) / n,
        };
        let target = Weierstrass::new(target_tau, policy)?;
        Ok(Self {
            order,
            mode,
            base,
            target,
        })
    }

    /// Shorthand for the `tau -> n tau` transformation.
    pub fn n_tau(tau: Complex<T>, n: i64, policy: TruncationPolicy) -> Result<Self> {
        Self::new(tau, TransformOrder::new(n)?, TransformMode::NTau, policy)
    }

    pub fn order(&self) -> TransformOrder {
        self.order
    }

    pub fn mode(&self) -> TransformMode {
        self.mode
    }

    pub fn base(&self) -> &Weierstrass<T> {
        &self.base
    }

    pub fn target(&self) -> &Weierstrass<T> {
        &self.target
    }

    fn n(&self) -> u32 {
        self.order.n
    }

    fn nf(&self) -> T {
        T::int(self.order.n as i64)
    }

    fn require_n_tau(&self, what: &'static str) -> Result<()> {
        if self.mode == TransformMode::NTau {
            Ok(())
        } else {
            Err(Error::ModeMismatch(what))
        }
    }

    fn shifts(&self, unit: ShiftUnit, from: u32) -> impl Iterator<Item = Complex<T>> {
        let n = self.n();
        (from..n).map(move |m| unit.shift(m, n))
    }

    /// `prod_{m=from}^{n-1} f(z + s_m)`.
    fn shifted_product<F>(&self, unit: ShiftUnit, from: u32, z: Complex<T>, f: F) -> Result<Complex<T>>
    where
        F: Fn(Complex<T>) -> Result<Complex<T>>,
    {
        let mut acc = one();
        for s in self.shifts(unit, from) {
            acc = acc * f(z + s)?;
        }
        Ok(acc)
    }

    /// `theta_a^2 theta_b^2 (n tau) / [theta_a^2 theta_b^2 (tau)]^n` for the
    /// listed theta-nulls.
    fn null_ratio(&self, idx: &[ThetaIndex]) -> Complex<T> {
        let prod = |w: &Weierstrass<T>| idx.iter().fold(one::<T>(), |acc, &i| acc * w.theta_null(i));
        let (t, b) = (prod(&self.target), prod(&self.base));
        t * t / powi(b * b, self.n() as i32)
    }

    fn theta1_prime_ratio(&self) -> Complex<T> {
        let (t, b) = (self.target.theta1_prime0(), self.base.theta1_prime0());
        t * t / powi(b * b, self.n() as i32)
    }

    /// `prod_{k>=1} [cot(k pi tau)^n / cot(k n pi tau)]^4`, which equals
    /// the theta3/theta4 null ratio.
    fn cot_ratio_product(&self) -> Result<Complex<T>> {
        let tau = self.base.tau();
        let n = self.n() as i32;
        let rate = 2.0 * std::f64::consts::PI * tau.im.as_f64();
        let k_terms = self.base.policy().decay_terms(rate, 0.0)?;
        let mut acc = one();
        for k in 1..=k_terms {
            let b = tau * (T::PI() * T::int(k as i64));
            let c = cot(b).ok_or(singular(tau, k))?;
            let cn = cot(b * self.nf()).ok_or(singular(tau, k))?;
            acc = acc * powi(powi(c, n) / cn, 4);
        }
        Ok(acc)
    }
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

fn singular<T: Real>(z: Complex<T>, k: usize) -> Error {
    Error::SingularTerm {
        z: to_c64(z),
        k: k as i64,
    }
}

fn nonzero<T: Real>(x: Complex<T>, what: &'static str) -> Result<Complex<T>> {
    if x.norm() == T::zero() || !x.norm().is_finite() {
        Err(Error::DivisionDegeneracy(what))
    } else {
        Ok(x)
    }
}

/// `theta_{j+1}` for `j = 1, 2, 3` and the complementary pair `N_j`.
fn null_pair(j: HalfPeriodIndex) -> [ThetaIndex; 2] {
    match j.get() {
        1 => [ThetaIndex::THREE, ThetaIndex::FOUR],
        2 => [ThetaIndex::TWO, ThetaIndex::FOUR],
        _ => [ThetaIndex::TWO, ThetaIndex::THREE],
    }
}

/// `(4/pi^p)^{n-1}`.
fn four_over_pi<T: Real>(p: i32, n: u32) -> T {
    (T::lit(4.0) / T::PI().powi(p)).powi(n as i32 - 1)
}

/// Right-hand side form of the `wp - e_j` transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WpNForm {
    /// `prod_k [cot^n(k pi tau)/cot(k n pi tau)]^4` prefactor (j = 1 only).
    CotPrefactor,
    /// Theta-null ratio prefactor.
    ThetaPrefactor,
}

/// `wp(nz, n tau) - e_j(n tau)` against
/// `C prod_{m=0}^{n-1} [wp(z + s_m) - e_j]`.
///
/// The constant is `(4/pi^2)^{n-1}` in both forms; the literal theta form
/// has `(4/pi^4)^{n-1}`.
pub fn wp_n_identity<T: Real>(
    t: &Transform<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
    form: WpNForm,
    reading: Reading,
    shift: ShiftUnit,
) -> Result<(Complex<T>, Complex<T>)> {
    t.require_n_tau("wp transformation")?;
    let lhs = t.target.wp_minus_e(j, z * t.nf())?;
    let prod = t.shifted_product(shift, 0, z, |x| t.base.wp_minus_e(j, x))?;
    let pref = wp_n_prefactor(t, j, form, reading)?;
    Ok((lhs, finite(pref * prod, "wp transformation")?))
}

fn wp_n_prefactor<T: Real>(
    t: &Transform<T>,
    j: HalfPeriodIndex,
    form: WpNForm,
    reading: Reading,
) -> Result<Complex<T>> {
    let n = t.n();
    match form {
        WpNForm::CotPrefactor => {
            if j.get() != 1 {
                return Err(Error::InvalidIndex("cot prefactor exists for j = 1 only".into()));
            }
            Ok(t.cot_ratio_product()? * four_over_pi::<T>(2, n))
        }
        WpNForm::ThetaPrefactor => {
            let p = if reading.is_printed() { 4 } else { 2 };
            Ok(t.null_ratio(&null_pair(j)) * four_over_pi::<T>(p, n))
        }
    }
}

/// Right-hand side form of the ratio `[wp(nz, n tau) - e_j(n tau)]/[wp(z) - e_j]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioForm {
    /// `prod_{m=1}^{(n-1)/2} [(wp(z) - wp(s_m + omega_j))/(wp(z) - wp(s_m))]^2`
    HalfRangeSquared,
    /// Same factors over `m = 1..n-1`; the literal display squares them.
    FullRange,
    /// `prod_{m=1}^{n-1} (wp(z + s_m) - e_j)/(wp(s_m) - e_j)`
    Samples,
    /// `prod_{m=1}^{n-1} (wp(z + s_m) - e_j) (sigma/sigma_j)^2(s_m)`
    SigmaSamples,
    /// Theta-null prefactor times `prod_{m=1}^{n-1} (wp(z + s_m) - e_j)`.
    ThetaPrefactor,
    /// Cot prefactor times the same product (j = 1 only).
    CotPrefactor,
}

/// The ratio `[wp(nz, n tau) - e_j(n tau)]/[wp(z) - e_j]` and one of its
/// product forms. The verified sample forms carry `1/n^2`.
pub fn wp_ratio_identity<T: Real>(
    t: &Transform<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
    form: RatioForm,
    reading: Reading,
    shift: ShiftUnit,
) -> Result<(Complex<T>, Complex<T>)> {
    t.require_n_tau("wp ratio")?;
    let b = &t.base;
    let lhs = t.target.wp_minus_e(j, z * t.nf())? / nonzero(b.wp_minus_e(j, z)?, "wp(z) = e_j")?;
    let inv_n2 = real(T::one() / (t.nf() * t.nf()));
    let c = if reading.is_printed() { one() } else { inv_n2 };
    let rhs = match form {
        RatioForm::HalfRangeSquared | RatioForm::FullRange => {
            let wz = b.wp(z)?;
            let omega = j.omega(b.lattice());
            let last = match form {
                RatioForm::HalfRangeSquared => (t.n() - 1) / 2,
                _ => t.n() - 1,
            };
            let mut prod = one();
            for m in 1..=last {
                let s = shift.shift(m, t.n());
                let den = nonzero(wz - b.wp(s)?, "wp(z) = wp(s_m)")?;
                prod = prod * (wz - b.wp(s + omega)?) / den;
            }
            let squared = form == RatioForm::HalfRangeSquared || reading.is_printed();
            c * if squared { prod * prod } else { prod }
        }
        RatioForm::Samples => {
            let num = t.shifted_product(shift, 1, z, |x| b.wp_minus_e(j, x))?;
            let den = t.shifted_product(shift, 1, Complex::default(), |x| b.wp_minus_e(j, x))?;
            c * num / nonzero(den, "wp(s_m) = e_j")?
        }
        RatioForm::SigmaSamples => {
            let num = t.shifted_product(shift, 1, z, |x| b.wp_minus_e(j, x))?;
            let q = t.shifted_product(shift, 1, Complex::default(), |x| b.quotient(j, x))?;
            c * num / nonzero(q * q, "sigma_j(s_m) = 0")?
        }
        RatioForm::ThetaPrefactor | RatioForm::CotPrefactor => {
            let wform = if form == RatioForm::CotPrefactor {
                WpNForm::CotPrefactor
            } else {
                WpNForm::ThetaPrefactor
            };
            let pref = wp_n_prefactor(t, j, wform, reading)?;
            pref * t.shifted_product(shift, 1, z, |x| b.wp_minus_e(j, x))?
        }
    };
    Ok((lhs, finite(rhs, "wp ratio")?))
}

/// Expressions of the `wp'` transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WpPrimeN<T: Real> {
    /// `wp'(nz, n tau)`.
    pub lhs: Complex<T>,
    /// `C theta1'^2(n tau)/theta1'^{2n}(tau) prod_{m=0}^{n-1} wp'(z + s_m)`.
    pub rhs_theta: Complex<T>,
    /// `C' wp'(z) prod_{m=1}^{n-1} wp'(z + s_m)/wp'(s_m)`.
    pub rhs_samples: Complex<T>,
}

/// `wp'(nz, n tau)` in its theta-prefactor and sample-point forms.
///
/// Verified constants: `C = (-1)^{(n-1)/2} (4/pi)^{n-1}` and `C' = n^{-3}`.
/// Literal ones: `(4/pi^4)^{n-1}` and `2^{1-n}`.
pub fn wp_prime_n_identity<T: Real>(
    t: &Transform<T>,
    z: Complex<T>,
    reading: Reading,
    shift: ShiftUnit,
) -> Result<WpPrimeN<T>> {
    t.require_n_tau("wp' transformation")?;
    let b = &t.base;
    let n = t.n();
    let lhs = t.target.wp_prime(z * t.nf())?;
    let (c, c2) = if reading.is_printed() {
        (four_over_pi::<T>(4, n), T::lit(2.0).powi(1 - n as i32))
    } else {
        (
            four_over_pi::<T>(1, n) * T::int(t.order.half_sign() as i64),
            T::one() / t.nf().powi(3),
        )
    };
    let prod = t.shifted_product(shift, 0, z, |x| b.wp_prime(x))?;
    let rhs_theta = t.theta1_prime_ratio() * prod * c;
    let num = t.shifted_product(shift, 1, z, |x| b.wp_prime(x))?;
    let den = t.shifted_product(shift, 1, Complex::default(), |x| b.wp_prime(x))?;
    let rhs_samples = b.wp_prime(z)? * num / nonzero(den, "wp'(s_m) = 0")? * c2;
    Ok(WpPrimeN {
        lhs,
        rhs_theta: finite(rhs_theta, "wp' transformation")?,
        rhs_samples: finite(rhs_samples, "wp' transformation")?,
    })
}

/// Expressions of the `wp'/(wp - e_j)` transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogDerivN<T: Real> {
    /// `wp'/(wp - e_j)` at `(nz, n tau)`.
    pub lhs: Complex<T>,
    /// `C theta_{j+1}^2(n tau)/theta_{j+1}^{2n}(tau) prod_{m=0}^{n-1} wp'/(wp - e_j)(z + s_m)`.
    pub rhs_theta: Complex<T>,
    /// `C' prod_{m=1}^{n-1} (wp(s_m) - e_j)/wp'(s_m) prod_{m=0}^{n-1} wp'/(wp - e_j)(z + s_m)`.
    pub rhs_samples: Complex<T>,
    /// `-2 pi S_j(nz; n tau)`, the reciprocal-sine form on the target lattice.
    pub rhs_sum: Complex<T>,
}

/// `wp'/(wp - e_j)` at `(nz, n tau)` in product and sum forms.
///
/// Verified constants: `C = (-1)^{(n-1)/2} pi^{1-n}`, `C' = 1/n`, and the
/// sine sum runs over all of Z. Literal: `C = 1`, `C' = 2^{1-n}`, `k != 0`.
pub fn logderiv_n_identity<T: Real>(
    t: &Transform<T>,
    j: HalfPeriodIndex,
    z: Complex<T>,
    reading: Reading,
    shift: ShiftUnit,
) -> Result<LogDerivN<T>> {
    t.require_n_tau("log-derivative transformation")?;
    let (b, tg) = (&t.base, &t.target);
    let n = t.n();
    let nz = z * t.nf();
    let lhs = tg.wp_prime(nz)? / nonzero(tg.wp_minus_e(j, nz)?, "wp(nz) = e_j")?;
    let (c, c2, set) = if reading.is_printed() {
        (T::one(), T::lit(2.0).powi(1 - n as i32), IndexSet::NonZero)
    } else {
        (
            T::PI().powi(1 - n as i32) * T::int(t.order.half_sign() as i64),
            T::one() / t.nf(),
            IndexSet::All,
        )
    };
    let ld = |x: Complex<T>| -> Result<Complex<T>> {
        Ok(b.wp_prime(x)? / nonzero(b.wp_minus_e(j, x)?, "wp = e_j at a shifted point")?)
    };
    let prod = t.shifted_product(shift, 0, z, ld)?;
    let th = t.null_ratio(&[j.theta()]);
    let mut samples = one::<T>();
    for s in t.shifts(shift, 1) {
        samples = samples * b.wp_minus_e(j, s)? / nonzero(b.wp_prime(s)?, "wp'(s_m) = 0")?;
    }
    let rhs_sum = modular_sine_sum(tg, j, nz, set, Reading::Corrected)? * (-T::lit(2.0) * T::PI());
    Ok(LogDerivN {
        lhs,
        rhs_theta: finite(th * prod * c, "log-derivative transformation")?,
        rhs_samples: finite(samples * prod * c2, "log-derivative transformation")?,
        rhs_sum,
    })
}

/// Expressions of the xi log-derivative transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XiLogDerivN<T: Real> {
    /// `xi'/xi` at `(nu, n tau)`.
    pub lhs: Complex<T>,
    /// `wp'/(2 (wp - e_alpha))` at `(nu, n tau)`; only for `(alpha, 0)`.
    pub target_wp: Option<Complex<T>>,
    /// `sum_{m=0}^{n-1} xi'/xi(u + 2m/n)`.
    pub shifted_xi: Complex<T>,
    /// The same sum written through `wp'/(2 (wp - e))`.
    pub shifted_wp: Complex<T>,
    /// `-pi S_alpha(nu; n tau)`; only for `(alpha, 0)`.
    pub target_sine: Option<Complex<T>>,
    /// `-pi sum_m S_alpha(u + 2m/n; tau)`; only for `(alpha, 0)`.
    pub shifted_sine: Option<Complex<T>>,
}

/// Logarithmic derivative of `xi(nu, n tau)` against the sums over the
/// shifted points `u + 2m/n`.
///
/// The derivative on the left is taken with respect to the argument `nu`, so
/// the shifted sums equal `n` times it; the verified reading divides them by
/// `n`, the literal one equates them directly. The literal reading also sums
/// the sines over `k != 0`.
pub fn logderiv_xi_n_sum<T: Real>(
    t: &Transform<T>,
    idx: XiIndex,
    u: Complex<T>,
    reading: Reading,
) -> Result<XiLogDerivN<T>> {
    t.require_n_tau("xi log-derivative transformation")?;
    let (b, tg) = (&t.base, &t.target);
    let nu = u * t.nf();
    let scale = if reading.is_printed() { T::one() } else { T::one() / t.nf() };
    let half_ld = |w: &Weierstrass<T>, j: u8, x: Complex<T>| -> Result<Complex<T>> {
        if j == 0 {
            return Ok(Complex::default());
        }
        let hj = HalfPeriodIndex::new(j)?;
        Ok(w.wp_prime(x)? / (nonzero(w.wp_minus_e(hj, x)?, "wp = e_j")? * T::lit(2.0)))
    };
    let lhs = xi_logderiv(tg, idx, nu)?;
    let mut sx = Complex::default();
    let mut sw = Complex::default();
    for s in t.shifts(ShiftUnit::TwoOverN, 0) {
        let x = u + s;
        sx = sx + xi_logderiv(b, idx, x)?;
        sw = sw + half_ld(b, idx.beta(), x)? - half_ld(b, idx.gamma(), x)?;
    }
    let alpha_zero = idx.gamma() == 0;
    let (target_wp, target_sine, shifted_sine) = if alpha_zero {
        let a = HalfPeriodIndex::new(idx.beta())?;
        let sine = |w: &Weierstrass<T>, x: Complex<T>| -> Result<Complex<T>> {
            let set = if reading.is_printed() {
                IndexSet::NonZero
            } else {
                IndexSet::All
            };
            Ok(modular_sine_sum(w, a, x, set, Reading::Corrected)? * (-T::PI()))
        };
        let mut ss = Complex::default();
        for s in t.shifts(ShiftUnit::TwoOverN, 0) {
            ss = ss + sine(b, u + s)?;
        }
        (
            Some(half_ld(tg, idx.beta(), nu)?),
            Some(sine(tg, nu)?),
            Some(ss * scale),
        )
    } else {
        (None, None, None)
    };
    Ok(XiLogDerivN {
        lhs,
        target_wp,
        shifted_xi: sx * scale,
        shifted_wp: sw * scale,
        target_sine,
        shifted_sine,
    })
}

/// The expressions of the reciprocal-sine multiplication chain, all with
/// `S(z; p) = sum_k 1/sin(2 k pi p + pi z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SineChainExpr {
    /// `S(nz; n tau)`.
    Lhs,
    /// `(1/n) sum_{m=0}^{n-1} S(z + s_m; tau)`.
    ShiftedSum,
    /// `2^{1-n} sum_k prod_m 1/sin(2 k pi tau + pi (z + s_m))`.
    SumOfProducts,
    /// `2^{n-1} theta2^2(n tau)/theta2^{2n}(tau) prod_{m=0}^{n-1} S(z + s_m; tau)`.
    ThetaProduct,
    /// `(4 pi)^{n-1} prod_k cot(k pi/tau)^{8n}/cot(k n pi/tau)^8 prod_m S(z + s_m; tau)`.
    CotProduct,
}

/// One expression of the reciprocal-sine chain.
///
/// The literal reading sums over `k != 0`, drops the `1/n` and `2^{n-1}`
/// factors and runs the product in [`SineChainExpr::SumOfProducts`] from
/// `m = 1`. The verified reading sums over Z and, for that expression, runs
/// `m = 0..n` with the sign `(-1)^{(n-1)/2}` when the shifts are `2m/n`.
/// [`SineChainExpr::CotProduct`] has no verified reading; both readings only
/// switch its index set.
pub fn sine_chain<T: Real>(
    t: &Transform<T>,
    expr: SineChainExpr,
    z: Complex<T>,
    reading: Reading,
    shift: ShiftUnit,
) -> Result<Complex<T>> {
    t.require_n_tau("sine chain")?;
    let printed = reading.is_printed();
    let set = if printed { IndexSet::NonZero } else { IndexSet::All };
    let tau = t.base.tau();
    let policy = t.base.policy();
    let base_spec = SineSumSpec::new(tau, SineSign::Plus, set)?;
    let s_base = |x: Complex<T>| sin_reciprocal_sum(x, &base_spec, policy);
    let n = t.n();
    let v = match expr {
        SineChainExpr::Lhs => {
            let spec = SineSumSpec::new(t.target.tau(), SineSign::Plus, set)?;
            sin_reciprocal_sum(z * t.nf(), &spec, policy)?
        }
        SineChainExpr::ShiftedSum => {
            let mut acc = Complex::<T>::default();
            for s in t.shifts(shift, 0) {
                acc = acc + s_base(z + s)?;
            }
            if printed {
                acc
            } else {
                acc / t.nf()
            }
        }
        SineChainExpr::SumOfProducts => {
            let from = if printed { 1 } else { 0 };
            let mut acc = sum_of_products(t, z, set, from, shift)? * T::lit(2.0).powi(1 - n as i32);
            if !printed && shift == ShiftUnit::TwoOverN && t.order.half_sign() < 0 {
                acc = -acc;
            }
            acc
        }
        SineChainExpr::ThetaProduct => {
            let prod = t.shifted_product(shift, 0, z, s_base)?;
            let c = if printed { T::one() } else { T::lit(2.0).powi(n as i32 - 1) };
            t.null_ratio(&[ThetaIndex::TWO]) * prod * c
        }
        SineChainExpr::CotProduct => {
            let prod = t.shifted_product(shift, 0, z, s_base)?;
            let c = (T::lit(4.0) * T::PI()).powi(n as i32 - 1);
            modular_cot_product(t)? * prod * c
        }
    };
    finite(v, "sine chain")
}

fn sum_of_products<T: Real>(
    t: &Transform<T>,
    z: Complex<T>,
    set: IndexSet,
    from: u32,
    shift: ShiftUnit,
) -> Result<Complex<T>> {
    let tau = t.base.tau();
    let pi = T::PI();
    if !(z.im.abs() < T::lit(2.0) * tau.im) {
        return Err(Error::StripViolation {
            z: to_c64(z),
            tau: to_c64(tau),
        });
    }
    let rate = 2.0 * std::f64::consts::PI * tau.im.as_f64();
    let k_terms = t.base.policy().decay_terms(rate, std::f64::consts::PI * z.im.abs().as_f64())?;
    let term = |k: i64| -> Result<Complex<T>> {
        let mut acc = one();
        for s in t.shifts(shift, from) {
            let arg = tau * (pi * T::int(2 * k)) + (z + s) * pi;
            acc = acc * crate::numerics::csc(arg).ok_or(Error::SingularTerm { z: to_c64(z), k })?;
        }
        Ok(acc)
    };
    let mut acc = crate::numerics::CompensatedSum::new();
    if set == IndexSet::All {
        acc.add(term(0)?);
    }
    for k in 1..=k_terms as i64 {
        acc.add(term(k)? + term(-k)?);
    }
    Ok(acc.value())
}

/// `prod_{k>=1} cot(k pi/tau)^{8n}/cot(k n pi/tau)^8`.
fn modular_cot_product<T: Real>(t: &Transform<T>) -> Result<Complex<T>> {
    let tau = t.base.tau();
    let inv = one::<T>() / tau;
    let n = t.n() as i32;
    let rate = 2.0 * std::f64::consts::PI * (-inv.im).as_f64();
    let k_terms = t.base.policy().decay_terms(rate, 0.0)?;
    let mut acc = one();
    for k in 1..=k_terms {
        let b = inv * (T::PI() * T::int(k as i64));
        let c = cot(b).ok_or(singular(tau, k))?;
        let cn = cot(b * t.nf()).ok_or(singular(tau, k))?;
        acc = acc * powi(c, 8 * n) / powi(cn, 8);
    }
    Ok(acc)
}

/// Elementary function in the multiplication formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigKind {
    Sin,
    Cos,
    Cot,
}

/// `f(n x)` and `C prod_{m=0}^{n-1} f(x + m pi/n)` with `C = 2^{n-1}` for
/// sin, `(-1)^{(n-1)/2} 2^{n-1}` for cos and `(-1)^{(n-1)/2}` for cot.
pub fn sine_multiplication<T: Real>(
    order: TransformOrder,
    kind: TrigKind,
    x: Complex<T>,
) -> Result<(Complex<T>, Complex<T>)> {
    let n = order.n();
    let nx = x * T::int(n as i64);
    let f = |w: Complex<T>| -> Result<Complex<T>> {
        match kind {
            TrigKind::Sin => Ok(w.sin()),
            TrigKind::Cos => Ok(w.cos()),
            TrigKind::Cot => cot(w).ok_or(Error::SingularTerm { z: to_c64(w), k: 0 }),
        }
    };
    let mut prod = one();
    for m in 0..n {
        prod = prod * f(x + ShiftUnit::PiOverN.shift::<T>(m, n))?;
    }
    let two_pow = T::lit(2.0).powi(n as i32 - 1);
    let sign = T::int(order.half_sign() as i64);
    let c = match kind {
        TrigKind::Sin => two_pow,
        TrigKind::Cos => two_pow * sign,
        TrigKind::Cot => sign,
    };
    Ok((f(nx)?, prod * c))
}

/// Which sigma transformation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaForm {
    /// `sigma_j/sigma` (j = 1, 2, 3).
    Quotient,
    /// `sigma` (j = 0) or `sigma_j` with its exponential prefactor.
    Raw,
}

/// `n`-transformation of the sigma functions; `j = 0` is sigma itself.
///
/// Verified forms, with `c0 = sum_{m>=1} wp(s_m)` and `c1 = -sum_{m>=1} zeta(s_m)`:
///
/// ```text
/// f_j(nu, n tau)  = (1/n) prod_{m=0}^{n-1} f_j(u + s_m) / prod_{m=1}^{n-1} f_j(s_m)
/// sigma(nu, n tau)   = n exp(c0 u^2/2 + c1 u) prod_{m=0}^{n-1} sigma(u + s_m) / prod_{m>=1} sigma(s_m)
/// sigma_j(nu, n tau) =   exp(c0 u^2/2 + c1 u) prod_{m=0}^{n-1} sigma_j(u + s_m) / prod_{m>=0} sigma_j(s_m)
/// ```
///
/// The literal quotient form runs both products from `m = 0` (so it hits
/// the pole of `f_j` at 0). The literal raw form uses the exponent
/// `sum_{m>=1} (-nu (m/n) eta + nu wp(m/n))`; its sigma denominator skips
/// `m = 0` because `sigma(0) = 0`.
pub fn sigma_n_transform<T: Real>(
    t: &Transform<T>,
    j: u8,
    u: Complex<T>,
    form: SigmaForm,
    reading: Reading,
    shift: ShiftUnit,
) -> Result<(Complex<T>, Complex<T>)> {
    t.require_n_tau("sigma transformation")?;
    let (b, tg) = (&t.base, &t.target);
    let nu = u * t.nf();
    let zero = Complex::default();
    match form {
        SigmaForm::Quotient => {
            let hj = HalfPeriodIndex::new(j)?;
            let lhs = tg.quotient(hj, nu)?;
            let num = t.shifted_product(shift, 0, u, |x| b.quotient(hj, x))?;
            let from = if reading.is_printed() { 0 } else { 1 };
            let den = t.shifted_product(shift, from, zero, |x| b.quotient(hj, x))?;
            let c = if reading.is_printed() { T::one() } else { T::one() / t.nf() };
            Ok((lhs, finite(num / nonzero(den, "f_j(s_m)")? * c, "sigma quotient transformation")?))
        }
        SigmaForm::Raw => {
            let sig = |x: Complex<T>| -> Result<Complex<T>> {
                if j == 0 {
                    b.sigma(x)
                } else {
                    b.sigma_j(HalfPeriodIndex::new(j)?, x)
                }
            };
            let lhs = if j == 0 {
                tg.sigma(nu)?
            } else {
                tg.sigma_j(HalfPeriodIndex::new(j)?, nu)?
            };
            let num = t.shifted_product(shift, 0, u, sig)?;
            let den_from = if j == 0 { 1 } else { 0 };
            let den = t.shifted_product(shift, den_from, zero, sig)?;
            let expo = if reading.is_printed() {
                let mut acc = Complex::<T>::default();
                for m in 1..t.n() {
                    let s = ShiftUnit::OneOverN.shift::<T>(m, t.n());
                    acc = acc - nu * s * b.eta1() + nu * b.wp(s)?;
                }
                acc
            } else {
                let mut c0 = Complex::<T>::default();
                let mut c1 = Complex::<T>::default();
                for s in t.shifts(shift, 1) {
                    c0 = c0 + b.wp(s)?;
                    c1 = c1 - b.zeta(s)?;
                }
                c0 * u * u * T::lit(0.5) + c1 * u
            };
            let lead = if j == 0 && !reading.is_printed() { t.nf() } else { T::one() };
            let rhs = expo.exp() * num / nonzero(den, "sigma(s_m)")? * lead;
            Ok((lhs, finite(rhs, "sigma transformation")?))
        }
    }
}

/// `xi_{beta gamma}` on the target lattice against
/// `xi(u) prod_{m=1}^{n-1} xi(u + m h)/xi(m h)` on the base lattice.
///
/// For [`TransformMode::NTau`], `h = 2/n` and the left side is `xi(nu, n tau)`;
/// the verified reading multiplies the right side by `1/n` for `(alpha, 0)`
/// and by `n` for `(0, alpha)`. For the other modes `h = 2 (tau + 2p)/n`
/// and the verified left side is `xi(u, (tau + 2p)/n)`; the literal one is
/// `xi(u/n, (tau + 2p)/n)`.
pub fn xi_n_transform<T: Real>(
    t: &Transform<T>,
    idx: XiIndex,
    u: Complex<T>,
    reading: Reading,
) -> Result<(Complex<T>, Complex<T>)> {
    let b = &t.base;
    let n = t.n();
    let nf = t.nf();
    let printed = reading.is_printed();
    let (lhs_arg, h) = match t.mode {
        TransformMode::NTau => (u * nf, real(T::lit(2.0) / nf)),
        _ => {
            let h = (b.tau() + T::int(2 * t.order.p)) * T::lit(2.0) / nf;
            (if printed { u / nf } else { u }, h)
        }
    };
    let lhs = xi(&t.target, idx, lhs_arg)?;
    let mut rhs = xi(b, idx, u)?;
    for m in 1..n {
        let s = h * T::int(m as i64);
        rhs = rhs * xi(b, idx, u + s)? / nonzero(xi(b, idx, s)?, "xi(m h) = 0")?;
    }
    if t.mode == TransformMode::NTau && !printed {
        if idx.gamma() == 0 {
            rhs = rhs / nf;
        } else if idx.beta() == 0 {
            rhs = rhs * nf;
        }
    }
    Ok((lhs, finite(rhs, "xi transformation")?))
}

/// The modular relations of the periods for the `n tau` transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodRelations<T: Real> {
    /// `l = k(n tau)`, evaluated directly.
    pub l: Complex<T>,
    /// `xi_21(tau) prod_{m=1}^{n-1} xi_21(tau + 2m/n)/xi_21(2m/n)`.
    pub l_shifted: Complex<T>,
    /// `k^n prod_{m=1}^{n-1} xi_12^2(2m/n)`.
    pub l_product: Complex<T>,
    /// `l' = k'(n tau)`, evaluated directly.
    pub lprime: Complex<T>,
    /// `k'^n prod_{m=1}^{n-1} 1/xi_23^2(2m/n)` (literal: `xi_21`).
    pub lprime_inverse: Complex<T>,
    /// `k'^n prod_{m=1}^{n-1} xi_32^2(2m/n)`.
    pub lprime_product: Complex<T>,
    /// `(e1 - e3)(tau)/(e1 - e3)(n tau)`.
    pub zeros_lhs: Complex<T>,
    /// Squared product of `xi_03^2` values (see [`modular_period_relations`]).
    pub zeros_rhs: Complex<T>,
}

/// Period relations `l`, `l'` and the zeros ratio.
///
/// The zeros ratio is compared in squared form, which avoids a square-root
/// branch. Verified: `[n prod_{m=1}^{(n-1)/2} xi_03^2((2m-1)/n)/xi_03^2(2m/n)]^2`;
/// literal: the product over `m = 1..n-1` without the factor `n`.
pub fn modular_period_relations<T: Real>(
    t: &Transform<T>,
    reading: Reading,
) -> Result<PeriodRelations<T>> {
    t.require_n_tau("period relations")?;
    let b = &t.base;
    let n = t.n();
    let ix = |p: u8, q: u8| XiIndex::new(p, q);
    let (k, kp) = crate::xi::moduli(b)?;
    let (l, lprime) = crate::xi::moduli(&t.target)?;
    let s = |m: u32| ShiftUnit::TwoOverN.shift::<T>(m, n);
    let tau = b.tau();
    let mut l_shifted = xi(b, ix(2, 1)?, tau)?;
    let mut l_product = powi(k, n as i32);
    let mut lprime_inverse = powi(kp, n as i32);
    let mut lprime_product = lprime_inverse;
    for m in 1..n {
        let x21 = nonzero(xi(b, ix(2, 1)?, s(m))?, "xi_21(2m/n) = 0")?;
        l_shifted = l_shifted * xi(b, ix(2, 1)?, tau + s(m))? / x21;
        let x12 = xi(b, ix(1, 2)?, s(m))?;
        l_product = l_product * x12 * x12;
        let xinv = if reading.is_printed() {
            x21
        } else {
            nonzero(xi(b, ix(2, 3)?, s(m))?, "xi_23(2m/n) = 0")?
        };
        lprime_inverse = lprime_inverse / (xinv * xinv);
        let x32 = xi(b, ix(3, 2)?, s(m))?;
        lprime_product = lprime_product * x32 * x32;
    }
    let e = |w: &Weierstrass<T>| w.e_difference(HalfPeriodIndex::ONE, HalfPeriodIndex::THREE);
    let zeros_lhs = e(b) / nonzero(e(&t.target), "e1 = e3")?;
    let x03 = |x: Complex<T>| xi(b, ix(0, 3).expect("valid index"), x);
    let frac = |m: u32| real(T::int(m as i64) / T::int(n as i64));
    let (last, c) = if reading.is_printed() {
        (n - 1, one())
    } else {
        ((n - 1) / 2, real(t.nf()))
    };
    let mut zr = c;
    for m in 1..=last {
        let a = x03(frac(2 * m - 1))?;
        let d = nonzero(x03(frac(2 * m))?, "xi_03 = 0")?;
        zr = zr * a * a / (d * d);
    }
    Ok(PeriodRelations {
        l,
        l_shifted: finite(l_shifted, "l")?,
        l_product: finite(l_product, "l")?,
        lprime,
        lprime_inverse: finite(lprime_inverse, "l'")?,
        lprime_product: finite(lprime_product, "l'")?,
        zeros_lhs,
        zeros_rhs: finite(zr * zr, "zeros ratio")?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn tr(re: f64, im: f64, n: i64) -> Transform<f64> {
        Transform::n_tau(Complex64::new(re, im), n, TruncationPolicy::default()).unwrap()
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / (1.0 + a.norm().max(b.norm()))
    }

    const Z: Complex64 = Complex64::new(0.31, 0.17);
    const C: Reading = Reading::Corrected;
    const TWO: ShiftUnit = ShiftUnit::TwoOverN;

    #[test]
    fn order_validation() {
        assert!(TransformOrder::new(2).is_err());
        assert!(TransformOrder::new(-3).is_err());
        assert!(TransformOrder::new(17).is_err());
        assert_eq!(TransformOrder::new(5).unwrap().half_sign(), 1);
        assert_eq!(TransformOrder::new(7).unwrap().half_sign(), -1);
    }

    #[test]
    fn wp_forms_agree_with_direct_evaluation() {
        for n in [3, 5] {
            let t = tr(0.13, 1.05, n);
            for j in HalfPeriodIndex::ALL {
                let (l, r) = wp_n_identity(&t, j, Z, WpNForm::ThetaPrefactor, C, TWO).unwrap();
                assert!(rel(l, r) < 1e-10, "n={n} j={j:?}");
            }
            let (l, r) = wp_n_identity(&t, HalfPeriodIndex::ONE, Z, WpNForm::CotPrefactor, C, TWO).unwrap();
            assert!(rel(l, r) < 1e-10);
        }
    }

    #[test]
    fn ratio_forms_agree() {
        let t = tr(-0.2, 1.3, 5);
        for j in HalfPeriodIndex::ALL {
            for form in [
                RatioForm::HalfRangeSquared,
                RatioForm::FullRange,
                RatioForm::Samples,
                RatioForm::SigmaSamples,
                RatioForm::ThetaPrefactor,
            ] {
                let (l, r) = wp_ratio_identity(&t, j, Z, form, C, TWO).unwrap();
                assert!(rel(l, r) < 1e-10, "{form:?} j={j:?}");
            }
        }
    }

    #[test]
    fn wp_prime_and_logderiv_forms() {
        for n in [3, 5, 7] {
            let t = tr(0.4, 0.9, n);
            let e = wp_prime_n_identity(&t, Z, C, TWO).unwrap();
            assert!(rel(e.lhs, e.rhs_theta) < 1e-9, "n={n}");
            assert!(rel(e.lhs, e.rhs_samples) < 1e-9, "n={n}");
            for j in HalfPeriodIndex::ALL {
                let d = logderiv_n_identity(&t, j, Z, C, TWO).unwrap();
                assert!(rel(d.lhs, d.rhs_theta) < 1e-9, "n={n} j={j:?}");
                assert!(rel(d.lhs, d.rhs_samples) < 1e-9, "n={n} j={j:?}");
                assert!(rel(d.lhs, d.rhs_sum) < 1e-9, "n={n} j={j:?}");
            }
        }
    }

    #[test]
    fn sine_chain_verified_expressions() {
        for n in [3, 5] {
            let t = tr(0.13, 1.05, n);
            let lhs = sine_chain(&t, SineChainExpr::Lhs, Z, C, TWO).unwrap();
            for (e, s) in [
                (SineChainExpr::ShiftedSum, TWO),
                (SineChainExpr::SumOfProducts, TWO),
                (SineChainExpr::SumOfProducts, ShiftUnit::OneOverN),
                (SineChainExpr::ThetaProduct, ShiftUnit::OneOverN),
            ] {
                let v = sine_chain(&t, e, Z, C, s).unwrap();
                assert!(rel(lhs, v) < 1e-10, "n={n} {e:?} {s:?}");
            }
            let cot = sine_chain(&t, SineChainExpr::CotProduct, Z, C, ShiftUnit::OneOverN).unwrap();
            assert!(rel(lhs, cot) > 1e-3);
        }
    }

    #[test]
    fn multiplication_formulas() {
        let x = Complex64::new(0.37, -0.21);
        for n in [3, 5, 7, 9] {
            let o = TransformOrder::new(n).unwrap();
            for k in [TrigKind::Sin, TrigKind::Cos, TrigKind::Cot] {
                let (l, r) = sine_multiplication(o, k, x).unwrap();
                assert!(rel(l, r) < 1e-12, "n={n} {k:?}");
            }
        }
    }

    #[test]
    fn sigma_transformations() {
        let t = tr(0.13, 1.05, 3);
        for j in 1..=3 {
            let (l, r) = sigma_n_transform(&t, j, Z, SigmaForm::Quotient, C, TWO).unwrap();
            assert!(rel(l, r) < 1e-10, "quotient j={j}");
        }
        for j in 0..=3 {
            let (l, r) = sigma_n_transform(&t, j, Z, SigmaForm::Raw, C, TWO).unwrap();
            assert!(rel(l, r) < 1e-10, "raw j={j}");
        }
        assert!(sigma_n_transform(&t, 1, Z, SigmaForm::Quotient, Reading::AsPrinted, TWO).is_err());
    }

    #[test]
    fn xi_transformations_all_modes() {
        let tau = Complex64::new(0.13, 1.05);
        let pol = TruncationPolicy::default();
        for (mode, p) in [
            (TransformMode::NTau, 0),
            (TransformMode::TauOverN, 0),
            (TransformMode::TauPlus2pOverN, 1),
        ] {
            let t = Transform::new(tau, TransformOrder::with_offset(3, p).unwrap(), mode, pol).unwrap();
            for idx in XiIndex::all() {
                let (l, r) = xi_n_transform(&t, idx, Z, C).unwrap();
                assert!(rel(l, r) < 1e-9, "{mode:?} {idx}");
            }
        }
    }

    #[test]
    fn xi_logderiv_sums() {
        let t = tr(0.13, 1.05, 3);
        for idx in XiIndex::all() {
            let e = logderiv_xi_n_sum(&t, idx, Z, C).unwrap();
            assert!(rel(e.lhs, e.shifted_xi) < 1e-9, "{idx}");
            assert!(rel(e.lhs, e.shifted_wp) < 1e-9, "{idx}");
            if let Some(v) = e.target_wp {
                assert!(rel(e.lhs, v) < 1e-9);
                assert!(rel(e.lhs, e.target_sine.unwrap()) < 1e-9, "{idx}");
                assert!(rel(e.lhs, e.shifted_sine.unwrap()) < 1e-9, "{idx}");
            }
        }
    }

    #[test]
    fn period_relations() {
        for n in [3, 5] {
            let t = tr(0.0, 1.2, n);
            let p = modular_period_relations(&t, C).unwrap();
            assert!(rel(p.l, p.l_product) < 1e-9, "n={n}");
            assert!(rel(p.l, p.l_shifted) < 1e-9, "n={n}");
            assert!(rel(p.lprime, p.lprime_product) < 1e-9, "n={n}");
            assert!(rel(p.lprime, p.lprime_inverse) < 1e-9, "n={n}");
            assert!(rel(p.zeros_lhs, p.zeros_rhs) < 1e-9, "n={n}");
            assert!(rel(p.l * p.l + p.lprime * p.lprime, Complex64::new(1.0, 0.0)) < 1e-12);
        }
    }

    #[test]
    fn mode_is_checked() {
        let t = Transform::new(
            Complex64::new(0.0, 1.0),
            TransformOrder::new(3).unwrap(),
            TransformMode::TauOverN,
            TruncationPolicy::default(),
        )
        .unwrap();
        assert!(matches!(
            wp_n_identity(&t, HalfPeriodIndex::ONE, Z, WpNForm::ThetaPrefactor, C, TWO),
            Err(Error::ModeMismatch(_))
        ));
    }
}
