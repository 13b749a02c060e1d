//! Planted faults.
//!
//! Each fault copies a verified reading from the catalog and corrupts it in
//! one place. The audit must never report a fault as `PASS_AS_PRINTED`.

use std::f64::consts::PI;

use wp_products::numerics::csc;
use wp_products::sums::{sin_reciprocal_sum, IndexSet, SineSign, SineSumSpec};
use wp_products::Complex64;

use crate::catalog::{lookup, register_catalog};
use crate::record::{scalars, Ctx, IdentityRecord, Values, AS_PRINTED};

/// Wraps the evaluator of `id`/`label` and scales every expression after
/// the first by `factor`.
fn scaled(catalog: &[IdentityRecord], fault: &str, id: &str, label: &str, factor: Complex64) -> IdentityRecord {
    let base = lookup(catalog, id).unwrap_or_else(|| panic!("{id} is registered"));
    let eval = base
        .variants
        .iter()
        .find(|v| v.label == label)
        .unwrap_or_else(|| panic!("{id} has variant {label}"))
        .eval
        .clone();
    let anchor = format!("{} [right-hand sides times {factor}]", base.anchor);
    let exprs: Vec<&str> = base.expressions.iter().map(String::as_str).collect();
    IdentityRecord::new(fault, &anchor, &exprs)
        .tolerance(base.tolerance)
        .domain(base.domain.clone())
        .variant(AS_PRINTED, move |ctx| {
            let mut v = eval(ctx)?;
            for e in v.iter_mut().skip(1) {
                for x in e.iter_mut() {
                    *x *= factor;
                }
            }
            Ok(v)
        })
}

/// `wp'/(wp - e1)` against a reciprocal-sine sum with the given sign and
/// index set; the `k = 0` term is added only when `lead` is set.
fn sine_sum(sign: SineSign, set: IndexSet, lead: bool) -> impl Fn(&Ctx) -> wp_products::Result<Values> {
    move |ctx| {
        let w = ctx.w()?;
        let z = ctx.z();
        let spec = SineSumSpec::new(w.tau(), sign, set)?;
        let mut s = sin_reciprocal_sum(z, &spec, w.policy())? * (2.0 * PI);
        if lead {
            s -= csc(z * PI).ok_or(wp_products::Error::SingularTerm { z, k: 0 })? * (2.0 * PI);
        }
        let lhs = w.wp_prime(z)? / w.wp_minus_e(wp_products::HalfPeriodIndex::ONE, z)?;
        Ok(scalars([lhs, s]))
    }
}

/// The five planted corruptions, ordered by id.
pub fn planted() -> Vec<IdentityRecord> {
    let catalog = register_catalog();
    let one = |x: f64| Complex64::new(x, 0.0);
    vec![
        IdentityRecord::new(
            "fault.index-set",
            "wp'/(wp - e1) = 2 pi sum_{k!=0} 1/sin(2k pi tau - pi z) [k = 0 term dropped]",
            &["wp'/(wp - e1)", "reciprocal-sine sum"],
        )
        .variant(AS_PRINTED, sine_sum(SineSign::Minus, IndexSet::NonZero, false)),
        scaled(&catalog, "fault.extra-pi", "thm2-1.e2", AS_PRINTED, one(PI)),
        scaled(&catalog, "fault.negated", "cor2-6.wp-prime", "scaled-argument", one(-1.0)),
        scaled(&catalog, "fault.scale", "thm2-1.e1", "theta-prefactor-pi", one(0.5)),
        IdentityRecord::new(
            "fault.sign",
            "wp'/(wp - e1) = -2 pi/sin(pi z) + 2 pi sum_{k!=0} 1/sin(2k pi tau + pi z) [sign of pi z flipped]",
            &["wp'/(wp - e1)", "reciprocal-sine sum"],
        )
        .variant(AS_PRINTED, sine_sum(SineSign::Plus, IndexSet::NonZero, true)),
    ]
}
