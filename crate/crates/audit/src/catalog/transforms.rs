//! Odd-order transformations: wp, wp', the log-derivatives, sigma, xi,
//! the period relations and the reciprocal-sine chain.

use wp_products::transforms::{
    logderiv_n_identity, logderiv_xi_n_sum, modular_period_relations, sigma_n_transform,
    sine_chain, sine_multiplication, wp_n_identity, wp_prime_n_identity, wp_ratio_identity,
    xi_n_transform, RatioForm, SigmaForm, SineChainExpr, TrigKind, WpNForm,
};
use wp_products::{Complex64, HalfPeriodIndex, Reading, ShiftUnit, TransformMode, XiIndex};

use super::hp;
use crate::record::{scalars, Ctx, IdentityRecord, Values, AS_PRINTED};
use crate::sample::{Domain, Step};

const TOL: f64 = 1e-8;

fn slug(s: ShiftUnit) -> &'static str {
    match s {
        ShiftUnit::TwoOverN => "2m-over-n",
        ShiftUnit::OneOverN => "m-over-n",
        ShiftUnit::TwoPiOverN => "2m-pi-over-n",
        ShiftUnit::PiOverN => "m-pi-over-n",
    }
}

fn record(id: &str, anchor: &str, exprs: &[&str]) -> IdentityRecord {
    IdentityRecord::new(id, anchor, exprs)
        .tolerance(TOL)
        .domain(Domain::transform(&[Step::TwoOverN, Step::OneOverN]))
}

/// Registers the four combinations of {printed, corrected} reading and
/// {printed, alternative} shift; the literal one first.
fn shift_variants<F>(r: IdentityRecord, printed: ShiftUnit, alt: ShiftUnit, f: F) -> IdentityRecord
where
    F: Fn(&Ctx, Reading, ShiftUnit) -> wp_products::Result<Values> + Send + Sync + Clone + 'static,
{
    let alt_label = format!("shift-{}", slug(alt));
    let mut r = r;
    for (label, reading, shift) in [
        (AS_PRINTED.to_string(), Reading::AsPrinted, printed),
        (alt_label.clone(), Reading::AsPrinted, alt),
        ("corrected".to_string(), Reading::Corrected, printed),
        (format!("corrected,{alt_label}"), Reading::Corrected, alt),
    ] {
        let f = f.clone();
        r = r.variant(&label, move |ctx| f(ctx, reading, shift));
    }
    r
}

fn reading_variants<F>(r: IdentityRecord, label: &str, f: F) -> IdentityRecord
where
    F: Fn(&Ctx, Reading) -> wp_products::Result<Values> + Send + Sync + Clone + 'static,
{
    let g = f.clone();
    r.variant(AS_PRINTED, move |ctx| f(ctx, Reading::AsPrinted))
        .variant(label, move |ctx| g(ctx, Reading::Corrected))
}

/// Transposes per-component tuples into `[expression][component]`.
fn columns<const K: usize>(rows: Vec<[Complex64; K]>) -> Values {
    (0..K).map(|e| rows.iter().map(|r| r[e]).collect()).collect()
}

fn per_j<const K: usize>(
    mut f: impl FnMut(HalfPeriodIndex) -> wp_products::Result<[Complex64; K]>,
) -> wp_products::Result<Values> {
    Ok(columns(HalfPeriodIndex::ALL.into_iter().map(&mut f).collect::<wp_products::Result<Vec<_>>>()?))
}

fn wp_records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.push(shift_variants(
        record(
            "eq1.ratio",
            "(wp(nz, n tau) - e_j(n tau)) = (wp(z) - e_j) prod_{m=1}^{(n-1)/2} [(wp(z) - wp(m/n + omega_j))/(wp(z) - wp(m/n))]^2",
            &["ratio at (nz, n tau)", "half-range product"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            per_j(|j| {
                let (l, r) = wp_ratio_identity(&t, j, ctx.z(), RatioForm::HalfRangeSquared, reading, shift)?;
                Ok([l, r])
            })
        },
    ));
    out.push(shift_variants(
        record(
            "thm4-1.e1",
            "wp(nz, n tau) - e1(n tau) = (4/pi^2)^{n-1} prod_k [cot^n(k pi tau)/cot(k n pi tau)]^4 prod_m [wp(z + m/n) - e1] = (4/pi^4)^{n-1} theta-null ratio prod_m [...]",
            &["wp(nz, n tau) - e1(n tau)", "cot form", "theta form"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let z = ctx.z();
            let (l, cot) = wp_n_identity(&t, HalfPeriodIndex::ONE, z, WpNForm::CotPrefactor, reading, shift)?;
            let (_, th) = wp_n_identity(&t, HalfPeriodIndex::ONE, z, WpNForm::ThetaPrefactor, reading, shift)?;
            Ok(scalars([l, cot, th]))
        },
    ));
    for j in [2u8, 3] {
        let anchor = format!(
            "wp(nz, n tau) - e{j}(n tau) = (4/pi^4)^{{n-1}} theta-null ratio prod_{{m=0}}^{{n-1}} [wp(z + m/n) - e{j}]"
        );
        out.push(shift_variants(
            record(&format!("thm4-1.e{j}"), &anchor, &["wp(nz, n tau) - e_j(n tau)", "theta form"]),
            ShiftUnit::OneOverN,
            ShiftUnit::TwoOverN,
            move |ctx, reading, shift| {
                let t = ctx.n_tau()?;
                let (l, r) = wp_n_identity(&t, hp(j), ctx.z(), WpNForm::ThetaPrefactor, reading, shift)?;
                Ok(scalars([l, r]))
            },
        ));
    }
    out.push(shift_variants(
        record(
            "cor4-2.main",
            "wp'(nz, n tau) = (4/pi^4)^{n-1} theta1'^2(0, n tau)/theta1'^{2n}(0, tau) prod_m wp'(z + m/n)",
            &["wp'(nz, n tau)", "theta form"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let r = wp_prime_n_identity(&t, ctx.z(), reading, shift)?;
            Ok(scalars([r.lhs, r.rhs_theta]))
        },
    ));
    out.push(shift_variants(
        record(
            "sec4-1.ratio",
            "ratio = (4/pi^4)^{n-1} theta ratio prod_{m>=1} [wp(z + m/n) - e1] = prod_{m=1}^{n-1} [(wp(z) - wp(m/n + 1))/(wp(z) - wp(m/n))]^2 = (4/pi^2)^{n-1} cot ratio prod_{m>=1} [...]",
            &["ratio at (nz, n tau)", "theta form", "full-range product", "cot form"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let z = ctx.z();
            let j = HalfPeriodIndex::ONE;
            let (l, th) = wp_ratio_identity(&t, j, z, RatioForm::ThetaPrefactor, reading, shift)?;
            let (_, full) = wp_ratio_identity(&t, j, z, RatioForm::FullRange, reading, shift)?;
            let (_, cot) = wp_ratio_identity(&t, j, z, RatioForm::CotPrefactor, reading, shift)?;
            Ok(scalars([l, th, full, cot]))
        },
    ));
    out.push(shift_variants(
        record(
            "cor4-3.i",
            "ratio = prod_{m=1}^{n-1} (wp(z + 2m/n) - e_j)/(wp(2m/n) - e_j) = prod_{m=1}^{n-1} (wp(z + 2m/n) - e_j) (sigma/sigma_j)^2(2m/n)",
            &["ratio at (nz, n tau)", "sample-point form", "sigma form"],
        ),
        ShiftUnit::TwoOverN,
        ShiftUnit::OneOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let z = ctx.z();
            per_j(|j| {
                let (l, s) = wp_ratio_identity(&t, j, z, RatioForm::Samples, reading, shift)?;
                let (_, q) = wp_ratio_identity(&t, j, z, RatioForm::SigmaSamples, reading, shift)?;
                Ok([l, s, q])
            })
        },
    ));
    out.push(shift_variants(
        record(
            "cor4-3.ii",
            "wp'(nz, n tau) = 2^{1-n} wp'(z) prod_{m=1}^{n-1} wp'(z + 2m pi/n)/wp'(2m pi/n)",
            &["wp'(nz, n tau)", "sample-point form"],
        ),
        ShiftUnit::TwoPiOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let r = wp_prime_n_identity(&t, ctx.z(), reading, shift)?;
            Ok(scalars([r.lhs, r.rhs_samples]))
        },
    ));
    out.push(shift_variants(
        record(
            "cor4-3.iii",
            "wp'/(wp - e_j)(nz, n tau) = 2^{1-n} prod_{m=1}^{n-1} (wp(2m/n) - e_j)/wp'(2m/n) prod_{m=0}^{n-1} wp'/(wp - e_j)(z + 2m/n)",
            &["log-derivative at (nz, n tau)", "sample-point form"],
        ),
        ShiftUnit::TwoOverN,
        ShiftUnit::OneOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            per_j(|j| {
                let r = logderiv_n_identity(&t, j, ctx.z(), reading, shift)?;
                Ok([r.lhs, r.rhs_samples])
            })
        },
    ));
    out.push(shift_variants(
        record(
            "cor4-4.i",
            "wp'/(wp - e_j)(nz, n tau) = theta_{j+1}^2(0, n tau)/theta_{j+1}^{2n}(0, tau) prod_{m=0}^{n-1} wp'/(wp - e_j)(z + 2m/n)",
            &["log-derivative at (nz, n tau)", "theta form"],
        ),
        ShiftUnit::TwoOverN,
        ShiftUnit::OneOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            per_j(|j| {
                let r = logderiv_n_identity(&t, j, ctx.z(), reading, shift)?;
                Ok([r.lhs, r.rhs_theta])
            })
        },
    ));
    out.push(shift_variants(
        record(
            "cor4-4.ii",
            "sum_{k!=0} 1/sin(2kn pi tau + n pi z) = theta2^2(0, n tau)/theta2^{2n}(0, tau) prod_m sum_{k!=0} 1/sin(2k pi tau + pi z + m pi/n)",
            &["sine sum at (nz, n tau)", "theta product"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let z = ctx.z();
            Ok(scalars([
                sine_chain(&t, SineChainExpr::Lhs, z, reading, shift)?,
                sine_chain(&t, SineChainExpr::ThetaProduct, z, reading, shift)?,
            ]))
        },
    ));
    out
}

fn sigma_xi_records() -> Vec<IdentityRecord> {
    let mut out = Vec::new();
    out.push(shift_variants(
        record(
            "sec4-2.sigma-quotient",
            "sigma_j/sigma(nu, n tau) = prod_{0<=m<=n-1} (sigma/sigma_j)(m/n) prod_{0<=m<=n-1} (sigma_j/sigma)(u + m/n)",
            &["sigma_j/sigma at (nu, n tau)", "shifted product"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            per_j(|j| {
                let (l, r) = sigma_n_transform(&t, j.get() as u8, ctx.z(), SigmaForm::Quotient, reading, shift)?;
                Ok([l, r])
            })
        },
    ));
    out.push(shift_variants(
        record(
            "sec4-2.sigma",
            "sigma_j(nu, n tau) = exp(-nu sum (m/n) eta + nu wp(m/n)) prod_{0<=m<=n-1} sigma_j(u + m/n)/sigma_j(m/n)",
            &["sigma_j at (nu, n tau)", "shifted product with exponential"],
        ),
        ShiftUnit::OneOverN,
        ShiftUnit::TwoOverN,
        |ctx, reading, shift| {
            let t = ctx.n_tau()?;
            let rows = (0..=3u8)
                .map(|j| {
                    let (l, r) = sigma_n_transform(&t, j, ctx.z(), SigmaForm::Raw, reading, shift)?;
                    Ok([l, r])
                })
                .collect::<wp_products::Result<Vec<_>>>()?;
            Ok(columns(rows))
        },
    ));

    let xi_all = |mode: TransformMode| {
        move |ctx: &Ctx, reading: Reading| {
            let t = ctx.transform(mode)?;
            let rows = XiIndex::all()
                .map(|idx| {
                    let (l, r) = xi_n_transform(&t, idx, ctx.z(), reading)?;
                    Ok([l, r])
                })
                .collect::<wp_products::Result<Vec<_>>>()?;
            Ok(columns(rows))
        }
    };
    out.push(reading_variants(
        record(
            "sec4-2.xi-n-tau",
            "xi(nu, n tau) = xi(u) prod_{m=1}^{n-1} xi(u + 2m/n)/xi(2m/n)",
            &["xi at (nu, n tau)", "shifted product"],
        ),
        "corrected",
        xi_all(TransformMode::NTau),
    ));
    let over_n = |id: &str, anchor: &str, mode: TransformMode, offsets: &[i64]| {
        reading_variants(
            IdentityRecord::new(id, anchor, &["xi on the transformed lattice", "shifted product"])
                .tolerance(TOL)
                .domain(Domain::transform(&[Step::TauOverN]).with_offsets(offsets)),
            "unscaled-argument",
            xi_all(mode),
        )
    };
    out.push(over_n(
        "sec4-2.xi-tau-over-n",
        "xi(u/n, tau/n) = xi(u) prod_{m=1}^{n-1} xi(u + 2m tau/n)/xi(2m tau/n)",
        TransformMode::TauOverN,
        &[0],
    ));
    out.push(over_n(
        "sec4-2.xi-tau-plus-2p-over-n",
        "xi(u/n, (tau+2p)/n) = xi(u) prod_{m=1}^{n-1} xi(u + 2m(tau+2p)/n)/xi(2m(tau+2p)/n)",
        TransformMode::TauPlus2pOverN,
        &[0, 1],
    ));
    out.push(reading_variants(
        record(
            "sec4-2.xi-logderiv",
            "xi'/xi(nu, n tau) = sum_{m=0}^{n-1} xi'/xi(u + 2m/n) = sum_m [wp'/(2(wp - e_b)) - wp'/(2(wp - e_c))](u + 2m/n)",
            &["xi'/xi at (nu, n tau)", "shifted xi sum", "shifted wp sum"],
        ),
        "chain-rule-n",
        |ctx, reading| {
            let t = ctx.n_tau()?;
            let rows = XiIndex::all()
                .map(|idx| {
                    let r = logderiv_xi_n_sum(&t, idx, ctx.z(), reading)?;
                    Ok([r.lhs, r.shifted_xi, r.shifted_wp])
                })
                .collect::<wp_products::Result<Vec<_>>>()?;
            Ok(columns(rows))
        },
    ));
    out.push(reading_variants(
        record(
            "cor4-5.chain",
            "xi_10'/xi_10(nz, n tau) = wp'/(2(wp - e1))(nz, n tau) = sum_m wp'/(2(wp - e1))(z + 2m/n) = -pi sum_{k!=0} 1/sin(2kn pi tau + n pi z) = -pi sum_m sum_{k!=0} 1/sin(2k pi tau + pi(z + 2m/n))",
            &["xi_10'/xi_10 at (nz, n tau)", "wp form at (nz, n tau)", "shifted wp sum", "sine sum at (nz, n tau)", "shifted sine sums"],
        ),
        "chain-rule-n,sum-over-Z",
        |ctx, reading| {
            let t = ctx.n_tau()?;
            let r = logderiv_xi_n_sum(&t, XiIndex::new(1, 0)?, ctx.z(), reading)?;
            let missing = || wp_products::Error::InvalidIndex("xi_10 has every form".into());
            Ok(scalars([
                r.lhs,
                r.target_wp.ok_or_else(missing)?,
                r.shifted_wp,
                r.target_sine.ok_or_else(missing)?,
                r.shifted_sine.ok_or_else(missing)?,
            ]))
        },
    ));
    out
}

fn period_records() -> Vec<IdentityRecord> {
    let base = |id: &str, anchor: &str, exprs: &[&str]| {
        IdentityRecord::new(id, anchor, exprs)
            .tolerance(TOL)
            .domain(Domain::transform(&[]))
    };
    vec![
        base(
            "sec4-2.l",
            "l = xi_21(tau, n tau) = xi_21(omega_3) prod xi_21(tau + 2m/n)/xi_21(2m/n) = k^n prod xi_12^2(2m/n)",
            &["l", "shifted product", "k^n product"],
        )
        .variant(AS_PRINTED, |ctx| {
            let r = modular_period_relations(&ctx.n_tau()?, Reading::AsPrinted)?;
            Ok(scalars([r.l, r.l_shifted, r.l_product]))
        }),
        reading_variants(
            base(
                "sec4-2.lprime",
                "l' = k'^n prod 1/xi_21^2(2m/n) = k'^n prod xi_32^2(2m/n)",
                &["l'", "inverse product", "xi_32 product"],
            ),
            "xi23-index",
            |ctx, reading| {
                let r = modular_period_relations(&ctx.n_tau()?, reading)?;
                Ok(scalars([r.lprime, r.lprime_inverse, r.lprime_product]))
            },
        ),
        reading_variants(
            base(
                "sec4-2.zeros",
                "sqrt(e1 - e3)(tau)/sqrt(e1 - e3)(n tau) = prod_{m=1}^{n-1} xi_03^2((2m-1)/n)/xi_03^2(2m/n), compared squared",
                &["(e1 - e3)(tau)/(e1 - e3)(n tau)", "squared product"],
            ),
            "half-range-times-n",
            |ctx, reading| {
                let r = modular_period_relations(&ctx.n_tau()?, reading)?;
                Ok(scalars([r.zeros_lhs, r.zeros_rhs]))
            },
        ),
    ]
}

fn sine_chain_records() -> Vec<IdentityRecord> {
    const EXPRS: [SineChainExpr; 4] = [
        SineChainExpr::Lhs,
        SineChainExpr::ShiftedSum,
        SineChainExpr::SumOfProducts,
        SineChainExpr::ThetaProduct,
    ];
    // Shifts for [ShiftedSum, SumOfProducts, ThetaProduct]; the literal ones first.
    let chain = |reading: Reading, shifts: [ShiftUnit; 3]| {
        move |ctx: &Ctx| {
            let t = ctx.n_tau()?;
            let z = ctx.z();
            let mut v = vec![sine_chain(&t, EXPRS[0], z, reading, ShiftUnit::TwoOverN)?];
            for (e, s) in EXPRS[1..].iter().zip(shifts) {
                v.push(sine_chain(&t, *e, z, reading, s)?);
            }
            Ok(scalars(v))
        }
    };
    use ShiftUnit::{OneOverN as One, TwoOverN as Two};
    let printed = [Two, Two, One];
    let chain_record = record(
        "cor4-6.chain",
        "sum_{k!=0} 1/sin(2kn pi tau + n pi z) = sum_m sum_{k!=0} 1/sin(2k pi tau + pi(z + 2m/n)) = 2^{1-n} sum_{k!=0} prod_{m=1}^{n-1} 1/sin(2k pi tau + pi(z + 2m/n)) = theta2^2(0, n tau)/theta2^{2n}(0, tau) prod_m sum_{k!=0} 1/sin(2k pi tau + pi z + m pi/n)",
        &["sine sum at (nz, n tau)", "shifted sum", "sum of products", "theta product"],
    )
    .variant(AS_PRINTED, chain(Reading::AsPrinted, printed))
    .variant("corrected", chain(Reading::Corrected, printed))
    .variant("corrected,shift-2m-over-n", chain(Reading::Corrected, [Two, Two, Two]))
    .variant("corrected,shift-m-over-n", chain(Reading::Corrected, [One, One, One]));

    let cot = |reading: Reading, shift: ShiftUnit| {
        move |ctx: &Ctx| {
            let t = ctx.n_tau()?;
            let z = ctx.z();
            Ok(scalars([
                sine_chain(&t, SineChainExpr::Lhs, z, reading, shift)?,
                sine_chain(&t, SineChainExpr::CotProduct, z, reading, shift)?,
            ]))
        }
    };
    let cot_record = record(
        "cor4-6.cot-form",
        "sum_{k!=0} 1/sin(2kn pi tau + n pi z) = (4 pi)^{n-1} prod_k cot(k pi/tau)^{8n}/cot(k n pi/tau)^8 prod_m sum_{k!=0} 1/sin(2k pi tau + pi(z + m/n))",
        &["sine sum at (nz, n tau)", "cot product"],
    )
    .variant(AS_PRINTED, cot(Reading::AsPrinted, One))
    .variant("sum-over-Z", cot(Reading::Corrected, One))
    .variant("sum-over-Z,shift-2m-over-n", cot(Reading::Corrected, Two));

    let mult = IdentityRecord::new(
        "cor4-6.sine-multiplication",
        "sin(nx) = 2^{n-1} prod_m sin(x + m pi/n), cos(nx) = (-1)^{(n-1)/2} 2^{n-1} prod_m cos(x + m pi/n), cot(nx) = (-1)^{(n-1)/2} prod_m cot(x + m pi/n)",
        &["f(nx)", "shifted product"],
    )
    .tolerance(1e-12)
    .domain(Domain::transform(&[]))
    .variant(AS_PRINTED, |ctx| {
        let order = wp_products::TransformOrder::new(ctx.sample.n as i64)?;
        let x = ctx.z() * std::f64::consts::PI;
        let tx = (ctx.tau() * 2.0 + ctx.z()) * std::f64::consts::PI;
        let rows = [(TrigKind::Sin, x), (TrigKind::Cos, x), (TrigKind::Cot, x), (TrigKind::Sin, tx)]
            .into_iter()
            .map(|(k, a)| sine_multiplication(order, k, a).map(|(l, r)| [l, r]))
            .collect::<wp_products::Result<Vec<_>>>()?;
        Ok(columns(rows))
    });
    vec![chain_record, cot_record, mult]
}

pub(super) fn records() -> Vec<IdentityRecord> {
    let mut out = wp_records();
    out.extend(sigma_xi_records());
    out.extend(period_records());
    out.extend(sine_chain_records());
    out
}
