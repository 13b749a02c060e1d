//! Product expansions of wp - e_j, sigma, sigma_j and wp'.

use std::f64::consts::PI;

use wp_products::numerics::csc;
use wp_products::products::{
    e_pairwise_products, e_pairwise_products_literal, sigma_j_product, sigma_product,
    wp_minus_e1_cot_product, wp_minus_e1_theta_prefactor, wp_minus_e_half_product,
    wp_prime_product_with, wp_shift_tan_product, ProductStart, SigmaGauge, WpPrimeConstant,
};
use wp_products::{Complex64, Error, HalfPeriodIndex, ThetaIndex, Weierstrass64};

use super::hp;
use crate::record::{scalars, IdentityRecord, AS_PRINTED};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn theta_quotient(j: u8) -> IdentityRecord {
    let id = format!("sec2.theta-quotient.e{j}");
    let anchor = format!("wp = e{j} + 1/4 [theta_j(v) theta1'(0) / (pi theta_j(0) theta1(v))]^2");
    let eval = move |scale: f64| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            let j = hp(j);
            let t = j.theta();
            let v = ctx.z() * 0.5;
            let f = w.theta(t, v)? * w.theta1_prime0() / (w.theta_null(t) * w.theta(ThetaIndex::ONE, v)?);
            let rhs = w.e(j) + (f * scale).powi(2) * 0.25;
            Ok(scalars([w.wp(ctx.z())?, rhs]))
        }
    };
    IdentityRecord::new(&id, &anchor, &["wp(z)", "e_j + (1/4) [theta quotient]^2"])
        .variant(AS_PRINTED, eval(1.0 / PI))
        .variant("pi-numerator", eval(PI))
        .variant("pi-squared-numerator", eval(PI * PI))
        .variant("no-pi", eval(1.0))
}

fn thm2_1() -> Vec<IdentityRecord> {
    let e1 = IdentityRecord::new(
        "thm2-1.e1",
        "wp - e1 = (pi/2)^2 cot^2(pi z/2) prod_k [cot(k pi tau - pi z/2) cot(k pi tau + pi z/2) / cot^2(k pi tau)]^2",
        &["wp(z) - e1", "cot product", "theta-prefactor product"],
    );
    let e1_eval = |pi_power: i32| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            let z = ctx.z();
            Ok(scalars([
                w.wp_minus_e(HalfPeriodIndex::ONE, z)?,
                wp_minus_e1_cot_product(&w, z)?,
                wp_minus_e1_theta_prefactor(&w, z, pi_power)?,
            ]))
        }
    };
    let mut out = vec![e1
        .variant(AS_PRINTED, e1_eval(2))
        .variant("theta-prefactor-pi", e1_eval(1))];

    for j in [2u8, 3] {
        let id = format!("thm2-1.e{j}");
        let trig = if j == 2 { "sec" } else { "csc" };
        let anchor = format!(
            "wp - e{j} = (pi/2)^2 prod_k [{trig}-type half-shift factors]^4, last exponent 4"
        );
        let eval = move |exp: i32| {
            move |ctx: &crate::record::Ctx| {
                let w = ctx.w()?;
                let z = ctx.z();
                Ok(scalars([
                    w.wp_minus_e(hp(j), z)?,
                    wp_minus_e_half_product(&w, hp(j), z, exp)?,
                ]))
            }
        };
        out.push(
            IdentityRecord::new(&id, &anchor, &["wp(z) - e_j", "half-shift product"])
                .variant(AS_PRINTED, eval(4))
                .variant("exponent-2", eval(2)),
        );
    }

    let sigma = |g: SigmaGauge| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            Ok(scalars([w.sigma(ctx.z())?, sigma_product(&w, ctx.z(), g)?]))
        }
    };
    out.push(
        IdentityRecord::new(
            "sigma-product.sigma",
            "sigma(z) = exp(eta v^2/2) (2/pi) sin(pi v) prod_k (1 - sin^2(pi v)/sin^2(k pi tau))",
            &["sigma(z)", "sine product"],
        )
        .variant(AS_PRINTED, sigma(SigmaGauge::QuarterExponent))
        .variant("schwarz-exponent", sigma(SigmaGauge::Schwarz)),
    );

    let sigma_j = |j: u8, start: ProductStart, g: SigmaGauge| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            Ok(scalars([
                w.sigma_j(hp(j), ctx.z())?,
                sigma_j_product(&w, hp(j), ctx.z(), start, g)?,
            ]))
        }
    };
    out.push(
        IdentityRecord::new(
            "sigma-product.sigma1",
            "sigma1(z) = exp(eta v^2/2) cos(pi v) prod_{k>=1} (1 - sin^2(pi v)/cos^2(k pi tau))",
            &["sigma1(z)", "cosine product"],
        )
        .variant(AS_PRINTED, sigma_j(1, ProductStart::One, SigmaGauge::QuarterExponent))
        .variant("schwarz-exponent", sigma_j(1, ProductStart::One, SigmaGauge::Schwarz)),
    );
    for j in [2u8, 3] {
        let id = format!("sigma-product.sigma{j}");
        let anchor = format!(
            "sigma{j}(z) = exp(eta v^2/2) prod_{{k>=0}} (1 - sin^2(pi v)/trig^2((k - 1/2) pi tau))"
        );
        out.push(
            IdentityRecord::new(&id, &anchor, &["sigma_j(z)", "half-shift product"])
                .variant(AS_PRINTED, sigma_j(j, ProductStart::Zero, SigmaGauge::QuarterExponent))
                .variant("k-from-1", sigma_j(j, ProductStart::One, SigmaGauge::QuarterExponent))
                .variant("schwarz-exponent", sigma_j(j, ProductStart::Zero, SigmaGauge::Schwarz))
                .variant(
                    "k-from-1,schwarz-exponent",
                    sigma_j(j, ProductStart::One, SigmaGauge::Schwarz),
                ),
        );
    }
    out
}

/// `(pi^2/2) (1/6 + sum_{n >= start} csc^2(n pi tau))`, truncated by the policy.
fn eta_series(w: &Weierstrass64, start: usize) -> wp_products::Result<Complex64> {
    let tau = w.tau();
    let k = w.policy().decay_terms(2.0 * PI * tau.im, 0.0)?;
    let mut s = c(1.0 / 6.0);
    for n in start..=k {
        let cs = csc(tau * (PI * n as f64)).ok_or(Error::DivisionDegeneracy("csc(n pi tau) pole"))?;
        s += cs * cs;
    }
    Ok(s * (PI * PI / 2.0))
}

/// `exp(2 eta v^2) (2/pi) sin(pi v) prod_{n>=1} (1 - sin^2(pi v)/sin^2(n pi tau))`, `v = z/2`.
fn sigma_sine_form(w: &Weierstrass64, z: Complex64, exponent: f64) -> wp_products::Result<Complex64> {
    let tau = w.tau();
    let v = z * 0.5;
    let s = (v * PI).sin();
    let k = w.policy().decay_terms(2.0 * PI * tau.im, 2.0 * PI * v.im.abs())?;
    let mut p = s * (2.0 / PI);
    for n in 1..=k {
        let r = s / (tau * (PI * n as f64)).sin();
        p *= c(1.0) - r * r;
    }
    Ok(p * (w.eta1() * v * v * exponent).exp())
}

fn remark2_2() -> Vec<IdentityRecord> {
    let sigma = |exponent: f64| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            let z = ctx.z();
            let g = if exponent == 2.0 { SigmaGauge::Schwarz } else { SigmaGauge::QuarterExponent };
            Ok(scalars([w.sigma(z)?, sigma_product(&w, z, g)?, sigma_sine_form(&w, z, exponent)?]))
        }
    };
    let eta = |start: usize| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            Ok(scalars([w.eta1_theta()?, eta_series(&w, start)?]))
        }
    };
    let tan = |ctx: &crate::record::Ctx| {
        let w = ctx.w()?;
        let z = ctx.z();
        Ok(scalars([w.wp(z + 1.0)?, wp_shift_tan_product(&w, z)?]))
    };
    let shift = |ctx: &crate::record::Ctx| {
        let w = ctx.w()?;
        let z = ctx.z();
        let e1 = w.e(HalfPeriodIndex::ONE);
        let lhs = (wp_shift_tan_product(&w, z)? - e1) * wp_minus_e1_cot_product(&w, z)?;
        let oracle = (e1 - w.e(hp(2))) * (e1 - w.e(hp(3)));
        let th = (w.theta_null(ThetaIndex::THREE) * w.theta_null(ThetaIndex::FOUR)).powi(4) * PI.powi(4) / 16.0;
        Ok(scalars([lhs, oracle, th]))
    };
    let mut out = vec![
        IdentityRecord::new(
            "remark2-2i.sigma",
            "sigma(z) = exp(2 eta v^2) (2/pi) sin(pi v) prod_n (1 - sin^2(pi v)/sin^2(n pi tau))",
            &["sigma(z)", "sine product", "direct sine product"],
        )
        .variant(AS_PRINTED, sigma(2.0))
        .variant("quarter-exponent", sigma(0.5)),
        IdentityRecord::new(
            "remark2-2i.eta",
            "eta = (pi^2/2) (1/6 + sum_{n>=0} 1/sin^2(n pi tau))",
            &["eta from theta", "reciprocal-sine series"],
        )
        .variant(AS_PRINTED, eta(0))
        .variant("sum-from-1", eta(1)),
        IdentityRecord::new(
            "remark2-2ii.tan",
            "wp(z+1) = e1 + (pi tan(pi z/2))^2/4 prod_{k!=0} [tan(k pi tau - pi z/2)/cot(k pi tau)]^2",
            &["wp(z + 1)", "tangent product"],
        )
        .variant(AS_PRINTED, tan),
        IdentityRecord::new(
            "remark2-2ii.shift",
            "(wp(z+1) - e1)(wp(z) - e1) = (e1 - e2)(e1 - e3) = (pi^4/16) theta3^4 theta4^4",
            &["product of shifted products", "(e1 - e2)(e1 - e3)", "theta form"],
        )
        .variant(AS_PRINTED, shift),
    ];

    // [e1, e3, e2] as ordered by the pairwise products.
    let specs: [(&str, usize, u8, Option<fn(Complex64) -> Complex64>); 3] = [
        ("e1", 0, 1, None),
        ("e3", 1, 3, Some(|t| t.powi(4))),
        ("e2", 2, 2, Some(|t| (t + 1.0).powi(4))),
    ];
    for (name, slot, j, weight) in specs {
        let id = format!("remark2-2ii.{name}");
        let anchor = format!("prod_{{j != {j}}} (e{j} - e_j) = prod_k 1/(16 cot^8(k pi p))");
        let oracle = move |w: &Weierstrass64| {
            let ej = w.e(hp(j));
            let (a, b) = hp(j).others();
            (ej - w.e(a)) * (ej - w.e(b))
        };
        let literal = move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            Ok(scalars([e_pairwise_products_literal(&w)?[slot], oracle(&w)]))
        };
        let corrected = move |unweight: bool| {
            move |ctx: &crate::record::Ctx| {
                let w = ctx.w()?;
                let mut p = e_pairwise_products(&w)?[slot];
                if let (true, Some(f)) = (unweight, weight) {
                    p *= f(w.tau());
                }
                Ok(scalars([p, oracle(&w)]))
            }
        };
        let mut r = IdentityRecord::new(&id, &anchor, &["cotangent product", "pairwise difference"])
            .variant(AS_PRINTED, literal);
        r = if weight.is_some() {
            r.variant("prefactor-pi4-over-16", corrected(true))
                .variant("prefactor-pi4-over-16,weight-p-4", corrected(false))
        } else {
            r.variant("prefactor-pi4-over-16", corrected(false))
        };
        out.push(r);
    }
    out
}

fn wp_prime() -> Vec<IdentityRecord> {
    let main = |k: WpPrimeConstant| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            Ok(scalars([w.wp_prime(ctx.z())?, wp_prime_product_with(&w, ctx.z(), k)?]))
        }
    };
    // wp'(u) = -sigma(2u)/sigma^4(u) and its theta form.
    let limit = |half: bool, k: f64| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let t1 = |x| w.theta(ThetaIndex::ONE, x);
            let th = if half { t1(u)? / t1(u * 0.5)?.powi(4) } else { t1(u * 2.0)? / t1(u)?.powi(4) };
            Ok(scalars([
                w.wp_prime(u)?,
                -w.sigma(u * 2.0)? / w.sigma(u)?.powi(4),
                -(w.theta1_prime0() * k).powi(3) * th,
            ]))
        }
    };
    vec![
        IdentityRecord::new(
            "thm2-7.main",
            "wp'(u) = -prod sin-type factors over the quarter periods",
            &["wp'(u)", "sine product"],
        )
        .tolerance(1e-8)
        .variant(AS_PRINTED, main(WpPrimeConstant::One))
        .variant("pi3", main(WpPrimeConstant::Pi3))
        .variant("pi3-over-8", main(WpPrimeConstant::Pi3Over8)),
        IdentityRecord::new(
            "sec2.wp-prime-limit",
            "wp'(u) = -sigma(2u)/sigma^4(u) = -(pi theta1'(0))^3 theta1(2u)/theta1^4(u)",
            &["wp'(u)", "sigma form", "theta form"],
        )
        .tolerance(1e-8)
        .variant(AS_PRINTED, limit(false, PI))
        .variant("half-arguments", limit(true, PI))
        .variant("half-arguments,theta1-prime-over-2", limit(true, 0.5)),
    ]
}

fn addition() -> IdentityRecord {
    let eval = |k: Complex64, half: bool| {
        move |ctx: &crate::record::Ctx| {
            let w = ctx.w()?;
            let u = ctx.z();
            let v = c(0.3) + ctx.tau() * 0.5;
            let s = if half { 0.5 } else { 1.0 };
            let t1 = |x| w.theta(ThetaIndex::ONE, x);
            let th = t1((u + v) * s)? * t1((u - v) * s)? / (t1(u * s)? * t1(v * s)?).powi(2);
            Ok(scalars([
                w.wp(u)? - w.wp(v)?,
                -w.sigma(u + v)? * w.sigma(u - v)? / (w.sigma(u)? * w.sigma(v)?).powi(2),
                (w.theta1_prime0() * k).powi(2) * th,
            ]))
        }
    };
    IdentityRecord::new(
        "sec2.addition",
        "wp(u) - wp(v) = -sigma(u+v) sigma(u-v)/(sigma^2 u sigma^2 v) = (pi theta1'(0))^2 theta1(u+v) theta1(u-v)/(theta1 u theta1 v)^2",
        &["wp(u) - wp(v)", "sigma form", "theta form"],
    )
    .tolerance(1e-8)
    .variant(AS_PRINTED, eval(c(PI), false))
    .variant("half-arguments,negated-quarter", eval(Complex64::new(0.0, 0.5), true))
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out: Vec<_> = (1..=3).map(theta_quotient).collect();
    out.extend(thm2_1());
    out.extend(remark2_2());
    out.extend(wp_prime());
    out.push(addition());
    out
}
