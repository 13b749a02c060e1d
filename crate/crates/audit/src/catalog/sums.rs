//! Reciprocal-sine and cot/tan sums for the logarithmic derivatives.

use std::f64::consts::PI;

use wp_products::numerics::csc;
use wp_products::sums::{
    modular_sine_sum, sigma_logderiv_combos, sigma_logderiv_sum, sin_reciprocal_sum,
    wp_from_double_sum, wp_prime_from_triple_sum, IndexSet, LogDerivForm, SineSign, SineSumSpec,
};
use wp_products::{Error, Reading};

use super::hp;
use crate::record::{scalars, Ctx, IdentityRecord, AS_PRINTED};

fn reading_variants(
    r: IdentityRecord,
    label: &str,
    f: impl Fn(&Ctx, Reading) -> wp_products::Result<crate::record::Values> + Send + Sync + Clone + 'static,
) -> IdentityRecord {
    let g = f.clone();
    r.variant(AS_PRINTED, move |ctx| f(ctx, Reading::AsPrinted))
        .variant(label, move |ctx| g(ctx, Reading::Corrected))
}

fn cor2_3() -> Vec<IdentityRecord> {
    let main = |set: IndexSet| {
        move |ctx: &Ctx| {
            let w = ctx.w()?;
            let z = ctx.z();
            let spec = SineSumSpec::new(w.tau(), SineSign::Minus, set)?;
            let mut s = sin_reciprocal_sum(z, &spec, w.policy())? * (2.0 * PI);
            if set == IndexSet::NonZero {
                s -= csc(z * PI).ok_or(Error::SingularTerm { z, k: 0 })? * (2.0 * PI);
            }
            let sigma = -w.sigma(z * 2.0)? / (w.sigma(z)? * w.sigma_j(hp(1), z)?).powi(2);
            let zeta = (w.zeta(z + 1.0)? - w.zeta(z)? - w.eta1()) * 2.0;
            Ok(scalars([s, sigma, zeta]))
        }
    };
    let forms = |ctx: &Ctx| {
        let w = ctx.w()?;
        let z = ctx.z();
        let s = |j| w.sigma_j(hp(j), z);
        Ok(scalars([
            w.wp_prime(z)? / w.wp_minus_e(hp(1), z)?,
            (w.sigma_logderiv(1, z)? - w.sigma_logderiv(0, z)?) * 2.0,
            -s(2)? * s(3)? / (w.sigma(z)? * s(1)?) * 2.0,
        ]))
    };
    vec![
        IdentityRecord::new(
            "cor2-3.main",
            "wp'/(wp - e1) = -2 pi/sin(pi z) + 2 pi sum_{k!=0} 1/sin(2 k pi tau - pi z) = -sigma(2z)/(sigma^2 sigma1^2) = 2 zeta(z+1) - 2 zeta(z) - 2 eta",
            &["reciprocal-sine sum", "sigma form", "zeta form"],
        )
        .variant(AS_PRINTED, main(IndexSet::NonZero))
        .variant("sum-over-Z", main(IndexSet::All)),
        IdentityRecord::new(
            "cor2-3.sigma-forms",
            "wp'/(wp - e1) = 2 (sigma1'/sigma1 - sigma'/sigma) = -2 sigma2 sigma3/(sigma sigma1)",
            &["wp'/(wp - e1)", "log-derivative difference", "sigma quotient"],
        )
        .variant(AS_PRINTED, forms),
    ]
}

fn cor2_4() -> Vec<IdentityRecord> {
    let s0 = |ctx: &Ctx| {
        let w = ctx.w()?;
        let z = ctx.z();
        Ok(scalars([
            w.sigma_logderiv(0, z)?,
            sigma_logderiv_sum(&w, 0, z, LogDerivForm::Cot)?,
            sigma_logderiv_sum(&w, 0, z, LogDerivForm::Quotient)?,
        ]))
    };
    // sigma_{j}'/sigma_{j}(z) = [sigma_{j-1}'/sigma_{j-1}](z + 1) - offset * eta, j = 1, 3.
    let shifted = |j: u8, offset: f64| {
        move |ctx: &Ctx| {
            let w = ctx.w()?;
            let z = ctx.z();
            Ok(scalars([
                w.sigma_logderiv(j, z)?,
                w.sigma_logderiv(j - 1, z + 1.0)? - w.eta1() * offset,
                sigma_logderiv_sum(&w, j, z, LogDerivForm::Quotient)?,
            ]))
        }
    };
    let s2 = |form: LogDerivForm| {
        move |ctx: &Ctx| {
            let w = ctx.w()?;
            let z = ctx.z();
            Ok(scalars([
                w.sigma_logderiv(2, z)?,
                sigma_logderiv_sum(&w, 2, z, form)?,
                sigma_logderiv_sum(&w, 2, z, LogDerivForm::Quotient)?,
            ]))
        }
    };
    vec![
        IdentityRecord::new(
            "cor2-4.sigma",
            "sigma'/sigma = eta z + (pi/2) cot(pi z/2) + (pi/2) sum_k [cot(k pi tau + pi z/2) - cot(k pi tau - pi z/2)]",
            &["zeta(z)", "cot sum", "quotient sum"],
        )
        .variant(AS_PRINTED, s0),
        IdentityRecord::new(
            "cor2-4.sigma1",
            "sigma1'/sigma1(z) = sigma'/sigma(z+1) = eta z - (pi/2) tan(pi z/2) - (pi/2) sum_k sin(pi z)/(cos^2(k pi tau) - sin^2(pi z/2))",
            &["sigma1'/sigma1", "shifted zeta", "quotient sum"],
        )
        .variant(AS_PRINTED, shifted(1, 0.0))
        .variant("eta-offset", shifted(1, 1.0)),
        IdentityRecord::new(
            "cor2-4.sigma2",
            "sigma2'/sigma2 = eta z - (pi/2) sum_{k>=0} [tan(a_k + pi z/2) - tan(a_k + pi z/2)], a_k = (k - 1/2) pi tau",
            &["sigma2'/sigma2", "tan sum", "quotient sum"],
        )
        .variant(AS_PRINTED, s2(LogDerivForm::CotAsPrinted))
        .variant("tan-difference", s2(LogDerivForm::Cot)),
        IdentityRecord::new(
            "cor2-4.sigma3",
            "sigma3'/sigma3(z) = sigma2'/sigma2(z+1) = eta z + (pi/2) sum_k sin(pi z)/(cos^2(a_k) - cos^2(pi z/2))",
            &["sigma3'/sigma3", "shifted sigma2 log-derivative", "quotient sum"],
        )
        .variant(AS_PRINTED, shifted(3, 0.0))
        .variant("eta-offset", shifted(3, 1.0)),
    ]
}

fn cor2_5() -> Vec<IdentityRecord> {
    // (id, combo slot, oracle indices (a, b, sign), corrected label)
    let specs: [(&str, usize, u8, u8, f64, Option<&str>, &str); 4] = [
        ("diff01", 0, 1, 0, -1.0, Some("with-k0-term"), "sigma1'/sigma1 - sigma'/sigma = pi sum_{k>=1} [1/sin(2k pi tau - pi z) - 1/sin(2k pi tau + pi z)]"),
        ("diff23", 1, 2, 3, -1.0, Some("k-from-1"), "sigma2'/sigma2 - sigma3'/sigma3 = pi sum_{k>=0} [1/sin((2k-1) pi tau - pi z) - 1/sin((2k-1) pi tau + pi z)]"),
        ("sum01", 2, 1, 0, 1.0, None, "sigma1'/sigma1 + sigma'/sigma = 2 eta z + pi cot(pi z) + pi sum_{k>=1} [cot(2k pi tau + pi z) - cot(2k pi tau - pi z)]"),
        ("sum23", 3, 2, 3, 1.0, Some("k-from-1"), "sigma2'/sigma2 + sigma3'/sigma3 = 2 eta z + pi sum_{k>=0} [cot((2k-1) pi tau + pi z) - cot((2k-1) pi tau - pi z)]"),
    ];
    specs
        .into_iter()
        .map(|(name, slot, a, b, sign, label, anchor)| {
            let eval = move |ctx: &Ctx, reading: Reading| {
                let w = ctx.w()?;
                let z = ctx.z();
                let oracle = w.sigma_logderiv(a, z)? + w.sigma_logderiv(b, z)? * sign;
                Ok(scalars([oracle, sigma_logderiv_combos(&w, z, reading)?[slot]]))
            };
            let r = IdentityRecord::new(&format!("cor2-5.{name}"), anchor, &["log-derivative combination", "trigonometric sum"]);
            match label {
                Some(l) => reading_variants(r, l, eval),
                None => r.variant(AS_PRINTED, move |ctx| eval(ctx, Reading::AsPrinted)),
            }
        })
        .collect()
}

fn cor2_6() -> Vec<IdentityRecord> {
    const LABEL: &str = "scaled-argument";
    let record = |id: &str, anchor: &str, exprs: &[&str]| {
        IdentityRecord::new(id, anchor, exprs).tolerance(1e-8)
    };
    let mut out = Vec::new();
    for (j, anchor) in [
        (2u8, "wp - e2 = pi^2 sum_k 1/sin(2k pi tau + pi z) sum_k 1/sin(-2k pi/tau + pi z)"),
        (3, "wp - e3 = pi^2 sum_k 1/sin(2k pi tau + pi z) sum_k 1/sin(-2k pi/(tau+1) + pi z)"),
        (1, "wp - e1 = pi^2 sum_k 1/sin(2k pi/(tau+1) + pi z) sum_k 1/sin(-2k pi/tau + pi z)"),
    ] {
        let eval = move |ctx: &Ctx, reading: Reading| {
            let w = ctx.w()?;
            let z = ctx.z();
            Ok(scalars([w.wp_minus_e(hp(j), z)?, wp_from_double_sum(&w, hp(j), z, reading)?]))
        };
        out.push(reading_variants(
            record(&format!("cor2-6.e{j}"), anchor, &["wp(z) - e_j", "double sum"]),
            LABEL,
            eval,
        ));
    }
    out.push(reading_variants(
        record(
            "cor2-6.wp-prime",
            "wp' = -2 pi^3 sum_k 1/sin(2k pi tau + pi z) sum_k 1/sin(-2k pi/tau + pi z) sum_k 1/sin(-2k pi/(tau+1) + pi z)",
            &["wp'(z)", "triple sum"],
        ),
        LABEL,
        |ctx, reading| {
            let w = ctx.w()?;
            Ok(scalars([w.wp_prime(ctx.z())?, wp_prime_from_triple_sum(&w, ctx.z(), reading)?]))
        },
    ));
    for (j, anchor) in [
        (3u8, "wp'/(wp - e3) = -2 pi sum_k 1/sin(-2k pi/tau + pi z)"),
        (2, "wp'/(wp - e2) = -2 pi sum_k 1/sin(-2k pi/(tau+1) + pi z)"),
    ] {
        let eval = move |ctx: &Ctx, reading: Reading| {
            let w = ctx.w()?;
            let z = ctx.z();
            Ok(scalars([
                w.wp_prime(z)? / w.wp_minus_e(hp(j), z)?,
                modular_sine_sum(&w, hp(j), z, IndexSet::All, reading)? * (-2.0 * PI),
            ]))
        };
        out.push(reading_variants(
            record(&format!("cor2-6.logderiv{j}"), anchor, &["wp'/(wp - e_j)", "reciprocal-sine sum"]),
            LABEL,
            eval,
        ));
    }
    out.push(
        record(
            "cor2-6.factorization",
            "wp'^2/((wp - e1)(wp - e3)) = [wp'/(wp - e1)] [wp'/(wp - e3)] = 4 (wp - e2)",
            &["wp'^2/((wp - e1)(wp - e3))", "4 (wp - e2)"],
        )
        .variant(AS_PRINTED, |ctx| {
            let w = ctx.w()?;
            let z = ctx.z();
            let d = w.wp_minus_e(hp(1), z)? * w.wp_minus_e(hp(3), z)?;
            Ok(scalars([w.wp_prime(z)?.powi(2) / d, w.wp_minus_e(hp(2), z)? * 4.0]))
        }),
    );
    out
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = cor2_3();
    out.extend(cor2_4());
    out.extend(cor2_5());
    out.extend(cor2_6());
    out
}
