//! The twelve acceptance criteria, one PASS/FAIL line each. Runs without
//! the libtest harness so the lines always reach stdout.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use wp_audit::sample::rng_for;
use wp_audit::{
    audit_all, emit_json, planted, register_catalog, select, AuditResult, IdentityRecord,
    SampleGrid, Status,
};
use wp_products::xi::moduli;
use wp_products::{
    pole_distance, Complex64, HalfPeriodIndex, LatticeTau, ThetaIndex, TruncationPolicy,
    Weierstrass64,
};

/// Records whose failure is documented as an irrecoverable misprint.
const IRRECOVERABLE: [&str; 1] = ["cor4-6.cot-form"];

type Check = Result<String, String>;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm().max(b.norm()))
}

fn policy() -> TruncationPolicy {
    TruncationPolicy::default()
}

fn taus(id: &str, count: usize) -> Vec<Complex64> {
    let mut rng = rng_for(7, id);
    (0..count)
        .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(0.8..=2.0)))
        .collect()
}

fn records(catalog: &[IdentityRecord], patterns: &[&str]) -> Vec<IdentityRecord> {
    let mut out: Vec<IdentityRecord> = patterns
        .iter()
        .flat_map(|p| select(catalog, Some(p)).expect("pattern matches").into_iter().cloned())
        .collect();
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out.dedup_by(|a, b| a.id == b.id);
    out
}

fn is_pass(r: &AuditResult) -> bool {
    matches!(r.status, Status::PassAsPrinted | Status::PassCorrected { .. })
}

/// Every result passes with its selected reading below `tol` on at least
/// `min_valid` samples; lists the resolutions.
fn all_pass(results: &[AuditResult], tol: f64, min_valid: usize) -> Check {
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for r in results {
        let s = r.selected();
        let ok = is_pass(r) && s.max_rel_residual.is_some_and(|m| m < tol) && s.n_valid >= min_valid;
        lines.push(format!("{}={}", r.id, r.status));
        if !ok {
            bad.push(format!("{} {} max={:?} n={}", r.id, r.status, s.max_rel_residual, s.n_valid));
        }
    }
    if bad.is_empty() {
        Ok(lines.join(" "))
    } else {
        Err(bad.join("; "))
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let t = Instant::now();
    let out = f()?;
    let dt = t.elapsed();
    if dt < limit {
        Ok(format!("{out} ({:.2}s)", dt.as_secs_f64()))
    } else {
        Err(format!("{out}, took {:.2}s", dt.as_secs_f64()))
    }
}

fn theta_layer() -> Check {
    timed(Duration::from_secs(1), || {
        let mut worst: f64 = 0.0;
        for tau in taus("acceptance.theta", 50) {
            let w = Weierstrass64::new(tau, policy()).map_err(|e| e.to_string())?;
            let [t2, t3, t4] = [ThetaIndex::TWO, ThetaIndex::THREE, ThetaIndex::FOUR].map(|j| w.theta_null(j));
            worst = worst.max(rel(w.theta1_prime0(), t2 * t3 * t4 * PI));
            worst = worst.max(rel(t3.powu(4), t2.powu(4) + t4.powu(4)));
        }
        (worst < 1e-12).then(|| format!("max rel {worst:.1e}")).ok_or(format!("max rel {worst:.1e}"))
    })
}

fn oracle_integrity() -> Check {
    timed(Duration::from_secs(5), || {
        let mut rng = rng_for(7, "acceptance.oracle");
        let mut worst: f64 = 0.0;
        let mut n = 0;
        while n < 200 {
            let tau = Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(0.8..=2.0));
            let z = rng.gen_range(-1.0..=1.0) + tau * rng.gen_range(-1.0..=1.0);
            let lat = LatticeTau::new(tau).map_err(|e| e.to_string())?;
            if pole_distance(z, &lat) < 0.05 {
                continue;
            }
            let w = Weierstrass64::new(tau, policy()).map_err(|e| e.to_string())?;
            let p = w.wp(z).map_err(|e| e.to_string())?;
            let d = w.wp_prime(z).map_err(|e| e.to_string())?;
            let prod = HalfPeriodIndex::ALL.iter().fold(Complex64::new(4.0, 0.0), |acc, &j| acc * (p - w.e(j)));
            let e = w.e_values();
            worst = worst.max(rel(d * d, prod)).max((e.e1 + e.e2 + e.e3).norm() / (1.0 + e.e1.norm()));
            n += 1;
        }
        (worst < 1e-9).then(|| format!("max rel {worst:.1e}")).ok_or(format!("max rel {worst:.1e}"))
    })
}

fn grid(n: usize) -> SampleGrid {
    SampleGrid::new(7, n)
}

fn suite(catalog: &[IdentityRecord], patterns: &[&str], n: usize, tol: f64, min_valid: usize) -> Check {
    let recs = records(catalog, patterns);
    let results = audit_all(&recs, &grid(n), &policy()).map_err(|e| e.to_string())?;
    all_pass(&results, tol, min_valid)
}

fn moduli_suite(catalog: &[IdentityRecord]) -> Check {
    let out = suite(catalog, &["sec3.*"], 50, 1e-9, 1)?;
    let w = Weierstrass64::new(Complex64::new(0.0, 1.0), policy()).map_err(|e| e.to_string())?;
    let (k, _) = moduli(&w).map_err(|e| e.to_string())?;
    let err = (k - Complex64::new(0.5f64.sqrt(), 0.0)).norm();
    if err < 1e-12 {
        Ok(format!("{out} k(i) err {err:.1e}"))
    } else {
        Err(format!("k(i) = {k}, err {err:.1e}"))
    }
}

fn transform_suite(catalog: &[IdentityRecord]) -> Check {
    let patterns = ["thm4-1.*", "cor4-2.*", "cor4-3.*", "cor4-4.*", "sec4-2.*", "eq1.*", "cor4-6.*"];
    let recs = records(catalog, &patterns);
    let results = audit_all(&recs, &grid(50), &policy()).map_err(|e| e.to_string())?;
    let (documented, rest): (Vec<_>, Vec<_>) =
        results.into_iter().partition(|r| IRRECOVERABLE.contains(&r.id.as_str()));
    let out = all_pass(&rest, 1e-8, 30)?;
    let notes: Vec<_> = documented
        .iter()
        .map(|r| {
            let c = r.selected().fitted_constant.unwrap_or([f64::NAN; 2]);
            format!("{}={} (documented, c={:.3e}{:+.3e}i)", r.id, r.status, c[0], c[1])
        })
        .collect();
    Ok(format!("{out} {}", notes.join(" ")))
}

fn chain_n3(catalog: &[IdentityRecord]) -> Check {
    let g = SampleGrid {
        orders: Some(vec![3]),
        ..grid(50)
    };
    let chain = audit_all(&records(catalog, &["cor4-6.chain"]), &g, &policy()).map_err(|e| e.to_string())?;
    let mult = audit_all(&records(catalog, &["cor4-6.sine-multiplication"]), &grid(50), &policy())
        .map_err(|e| e.to_string())?;
    Ok(format!("{} {}", all_pass(&chain, 1e-8, 30)?, all_pass(&mult, 1e-12, 30)?))
}

fn fault_injection() -> Check {
    let faults = planted();
    let results = audit_all(&faults, &grid(50), &policy()).map_err(|e| e.to_string())?;
    let lines: Vec<_> = results.iter().map(|r| format!("{}={}", r.id, r.status)).collect();
    if results.len() == 5 && results.iter().all(|r| r.status != Status::PassAsPrinted) {
        Ok(lines.join(" "))
    } else {
        Err(lines.join(" "))
    }
}

fn main() -> ExitCode {
    let catalog = register_catalog();
    let t = Instant::now();
    let full = audit_all(&catalog, &grid(50), &policy()).map(|r| emit_json(&r));
    let full_time = t.elapsed();

    let checks: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("theta layer identities", Box::new(theta_layer)),
        ("oracle integrity", Box::new(oracle_integrity)),
        ("wp - e_j products", Box::new(|| suite(&catalog, &["thm2-1.e?"], 100, 1e-9, 50))),
        ("wp' product", Box::new(|| suite(&catalog, &["thm2-7.main"], 100, 1e-8, 50))),
        (
            "log-derivative sums",
            Box::new(|| suite(&catalog, &["cor2-3.*", "cor2-4.*", "cor2-5.*", "thm3-1.*"], 100, 1e-9, 50)),
        ),
        ("double and triple sums", Box::new(|| suite(&catalog, &["cor2-6.*"], 50, 1e-8, 25))),
        ("xi relation suite", Box::new(|| moduli_suite(&catalog))),
        ("odd-order transforms", Box::new(|| transform_suite(&catalog))),
        ("reciprocal-sine chain, n = 3", Box::new(|| chain_n3(&catalog))),
        ("fault injection", Box::new(fault_injection)),
        (
            "determinism",
            Box::new(|| {
                let a = full.as_ref().map_err(|e| e.to_string())?.as_ref().map_err(|e| e.to_string())?;
                let b = audit_all(&catalog, &grid(50), &policy())
                    .and_then(|r| emit_json(&r))
                    .map_err(|e| e.to_string())?;
                if *a == b {
                    Ok(format!("{} bytes identical", a.len()))
                } else {
                    Err("reports differ".into())
                }
            }),
        ),
        (
            "full catalog runtime",
            Box::new(|| {
                full.as_ref().map_err(|e| e.to_string())?;
                let s = full_time.as_secs_f64();
                let msg = format!("{} records in {s:.2}s", catalog.len());
                if s < 60.0 { Ok(msg) } else { Err(msg) }
            }),
        ),
    ];

    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

