//! Relations among the twelve sigma quotients xi_{beta gamma}.

use std::f64::consts::PI;

use wp_products::sums::{modular_sine_sum, IndexSet};
use wp_products::xi::{modulus_from_theta, moduli, xi, xi_prime};
use wp_products::{Complex64, HalfPeriodIndex, Reading, XiIndex};

use super::{cauchy_derivative, hp, CAUCHY_RADIUS};
use crate::record::{scalars, Ctx, IdentityRecord, Values, AS_PRINTED};

fn ix(b: u8, g: u8) -> XiIndex {
    XiIndex::new(b, g).expect("distinct indices in 0..=3")
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn relations() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.push(
        IdentityRecord::new(
            "sec3.wp-prime-xi",
            "wp'(u) = -2 xi_10(u) xi_20(u) xi_30(u)",
            &["wp'(u)", "-2 xi_10 xi_20 xi_30"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let p = xi(&w, ix(1, 0), u)? * xi(&w, ix(2, 0), u)? * xi(&w, ix(3, 0), u)?;
            Ok(scalars([w.wp_prime(u)?, p * -2.0]))
        }),
    );
    out.push(
        IdentityRecord::new(
            "sec3.xi-prime",
            "xi_a0' = -xi_b0 xi_c0, xi_0a' = xi_ba xi_ca, xi_bc' = -(e_b - e_c) xi_0c xi_ac",
            &["contour derivative of xi", "closed form"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let mut d = Vec::new();
            let mut closed = Vec::new();
            for idx in XiIndex::all() {
                d.push(cauchy_derivative(|x| xi(&w, idx, x), u, CAUCHY_RADIUS)?);
                closed.push(xi_prime(&w, idx, u)?);
            }
            Ok(vec![d, closed])
        }),
    );
    out.push(
        IdentityRecord::new(
            "sec3.xi-product",
            "xi_b0(u) xi_c1(u) = -wp'(u)/(2 (wp(u) - e1))",
            &["xi_b0 xi_c1", "-wp'/(2 (wp - e1))"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let rhs = -w.wp_prime(u)? / (w.wp_minus_e(HalfPeriodIndex::ONE, u)? * 2.0);
            Ok(vec![
                vec![
                    xi(&w, ix(2, 0), u)? * xi(&w, ix(3, 1), u)?,
                    xi(&w, ix(3, 0), u)? * xi(&w, ix(2, 1), u)?,
                ],
                vec![rhs, rhs],
            ])
        }),
    );
    out.push(
        IdentityRecord::new(
            "sec3.differential-equation",
            "(dy/du)^2 = (e_a - e_b + y^2)(e_a - e_c + y^2), y = xi_a0",
            &["(xi_a0')^2", "quartic in xi_a0"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let mut lhs = Vec::new();
            let mut rhs = Vec::new();
            for a in HalfPeriodIndex::ALL {
                let idx = ix(a.get() as u8, 0);
                let d = cauchy_derivative(|x| xi(&w, idx, x), u, CAUCHY_RADIUS)?;
                let y2 = xi(&w, idx, u)?.powi(2);
                let (b, c) = a.others();
                lhs.push(d * d);
                rhs.push((w.e(a) - w.e(b) + y2) * (w.e(a) - w.e(c) + y2));
            }
            Ok(vec![lhs, rhs])
        }),
    );
    out.push(
        IdentityRecord::new(
            "sec3.three-wp",
            "3 wp(u) = xi_10^2 + xi_20^2 + xi_30^2",
            &["3 wp(u)", "sum of squares"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let mut s = Complex64::new(0.0, 0.0);
            for a in 1..=3 {
                s += xi(&w, ix(a, 0), u)?.powi(2);
            }
            Ok(scalars([w.wp(u)? * 3.0, s]))
        }),
    );
    let second = |log: bool| {
        move |ctx: &Ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let wpp = cauchy_derivative(|x| w.wp_prime(x), u, CAUCHY_RADIUS)?;
            let mut s = Complex64::new(0.0, 0.0);
            for a in 1..=3 {
                let d = xi_prime(&w, ix(a, 0), u)?;
                s += if log { d / xi(&w, ix(a, 0), u)? } else { d * 2.0 };
            }
            Ok(scalars([wpp / w.wp_prime(u)?, s]))
        }
    };
    out.push(
        IdentityRecord::new(
            "sec3.wp-second",
            "wp''(u)/wp'(u) = 2 xi_10' + 2 xi_20' + 2 xi_30'",
            &["wp''/wp'", "sum over xi_a0"],
        )
        .variant(AS_PRINTED, second(false))
        .variant("log-derivative", second(true)),
    );
    out.push(
        IdentityRecord::new(
            "sec3.half-period-table",
            "xi_a0(omega_b) = sqrt(e_b - e_a), xi_bc(omega_a) = sqrt(e_a - e_b)/sqrt(e_a - e_c)",
            &["squared xi at half-periods", "e differences"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let lat = w.lattice();
            let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
            for a in HalfPeriodIndex::ALL {
                let (b, c) = a.others();
                let (ag, bg, cg) = (a.get() as u8, b.get() as u8, c.get() as u8);
                for p in [b, c] {
                    lhs.push(xi(&w, ix(ag, 0), p.omega(lat))?.powi(2));
                    rhs.push(w.e(p) - w.e(a));
                }
                for (bb, cc) in [(bg, cg), (cg, bg)] {
                    lhs.push(xi(&w, ix(bb, cc), a.omega(lat))?.powi(2));
                    rhs.push((w.e(a) - w.e(hp(bb))) / (w.e(a) - w.e(hp(cc))));
                }
            }
            Ok(vec![lhs, rhs])
        }),
    );
    out.push(
        IdentityRecord::new(
            "sec3.moduli",
            "k = xi_21(omega_3), k' = xi_23(omega_1), k^2 + k'^2 = 1",
            &["[k^2 + k'^2, k]", "[1, theta2^2/theta3^2]"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let (k, kp) = moduli(&w)?;
            Ok(vec![vec![k * k + kp * kp, k], vec![one(), modulus_from_theta(&w)]])
        }),
    );
    out.push(
        IdentityRecord::new(
            "sec3.xi-squares",
            "xi_a0^2 = wp - e_a, xi_0a^2 = 1/(wp - e_a), xi_bc^2 = (wp - e_b)/(wp - e_c)",
            &["xi^2", "wp differences"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let p = w.wp(u)?;
            let d = |j: u8| if j == 0 { one() } else { p - w.e(hp(j)) };
            let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
            for idx in XiIndex::all() {
                lhs.push(xi(&w, idx, u)?.powi(2));
                rhs.push(d(idx.beta()) / d(idx.gamma()));
            }
            Ok(vec![lhs, rhs])
        }),
    );
    out
}

/// Which parts of the log-derivative display are corrected.
#[derive(Clone, Copy)]
struct LogDerivReading {
    set: IndexSet,
    scaled: bool,
    xi_squared: bool,
}

/// `[xi'/xi, -pi S_a, sqrt(radicand)]`, the square root taking the branch
/// nearest the left side.
fn thm3_1_eval(a: u8, r: LogDerivReading) -> impl Fn(&Ctx) -> wp_products::Result<Values> + Send + Sync + Clone {
    move |ctx: &Ctx| {
        let w = ctx.w()?;
        let u = ctx.z();
        let idx = ix(a, 0);
        let x = xi(&w, idx, u)?;
        let lhs = xi_prime(&w, idx, u)? / x;
        let reading = if r.scaled { Reading::Corrected } else { Reading::AsPrinted };
        let sum = modular_sine_sum(&w, hp(a), u, r.set, reading)? * -PI;
        let (b, c) = hp(a).others();
        let ea = w.e(hp(a));
        let x2 = x * x;
        let mut rad = ((ea - w.e(b)) / x2 + 1.0) * ((ea - w.e(c)) / x2 + 1.0);
        if r.xi_squared {
            rad *= x2;
        }
        let root = rad.sqrt();
        let root = if (root - lhs).norm() <= (root + lhs).norm() { root } else { -root };
        Ok(scalars([lhs, sum, root]))
    }
}

fn thm3_1() -> Vec<IdentityRecord> {
    let printed = LogDerivReading { set: IndexSet::NonZero, scaled: false, xi_squared: false };
    [(1u8, "tau"), (2, "-1/(tau+1)"), (3, "-1/tau")]
        .into_iter()
        .map(|(a, p)| {
            let (b, c) = hp(a).others();
            let anchor = format!(
                "xi_{a}0'/xi_{a}0 = sqrt(((e{a} - e{})/xi_{a}0^2 + 1)((e{a} - e{})/xi_{a}0^2 + 1)) = -pi sum_{{k!=0}} 1/sin(2k pi p + pi z), p = {p}",
                b.get(),
                c.get()
            );
            let mut r = IdentityRecord::new(
                &format!("thm3-1.xi{a}0"),
                &anchor,
                &["xi'/xi", "reciprocal-sine sum", "square-root form"],
            )
            .variant(AS_PRINTED, thm3_1_eval(a, printed))
            .variant("xi-squared-factor", thm3_1_eval(a, LogDerivReading { xi_squared: true, ..printed }))
            .variant(
                "sum-over-Z,xi-squared-factor",
                thm3_1_eval(a, LogDerivReading { set: IndexSet::All, scaled: false, xi_squared: true }),
            );
            if a != 1 {
                r = r.variant(
                    "sum-over-Z,scaled-argument,xi-squared-factor",
                    thm3_1_eval(a, LogDerivReading { set: IndexSet::All, scaled: true, xi_squared: true }),
                );
            }
            r
        })
        .collect()
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = relations();
    out.extend(thm3_1());
    out
}
