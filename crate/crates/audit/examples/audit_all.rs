//! Prints one summary line per catalog record on the default grid.
//! An optional argument filters ids with a glob; `fault.*` audits the
//! planted faults instead.

use wp_audit::{audit_all, planted, register_catalog, select, SampleGrid};
use wp_products::TruncationPolicy;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pattern = std::env::args().nth(1);
    let mut catalog = register_catalog();
    if pattern.as_deref().is_some_and(|p| p.starts_with("fault")) {
        catalog = planted();
    }
    let records: Vec<_> = select(&catalog, pattern.as_deref())?.into_iter().cloned().collect();
    for r in audit_all(&records, &SampleGrid::default(), &TruncationPolicy::default())? {
        println!("{}", r.summary_line());
        if std::env::var_os("VERBOSE").is_some() {
            for v in &r.variants {
                println!(
                    "    {:<40} valid={:<3} err={:<3} max={:?} c={:?} disp={:?}",
                    v.label, v.n_valid, v.n_errors, v.max_rel_residual, v.fitted_constant, v.constant_dispersion
                );
            }
        }
    }
    Ok(())
}
