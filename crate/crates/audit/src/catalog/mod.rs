//! The registry of displayed identities.
//!
//! Every record lists the literal reading first; the other variants are the
//! alternative readings (constants, index sets, shift arguments) that the
//! engine may select. Anchors are short formula transcriptions.

mod products;
mod sums;
mod transforms;
mod xi;

use std::collections::BTreeSet;
use std::f64::consts::PI;

use wp_products::{Complex64, HalfPeriodIndex, Result};

use crate::error::AuditError;
use crate::record::IdentityRecord;

/// All records, ordered by id.
pub fn register_catalog() -> Vec<IdentityRecord> {
    try_register(
        products::records()
            .into_iter()
            .chain(sums::records())
            .chain(xi::records())
            .chain(transforms::records()),
    )
    .expect("catalog ids are unique")
}

/// Collects records, rejecting duplicate ids and malformed records.
pub fn try_register(records: impl IntoIterator<Item = IdentityRecord>) -> crate::error::Result<Vec<IdentityRecord>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for r in records {
        if !seen.insert(r.id.clone()) {
            return Err(AuditError::DuplicateId(r.id));
        }
        r.validate().map_err(AuditError::InvalidRecord)?;
        out.push(r);
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}

pub fn lookup<'a>(records: &'a [IdentityRecord], id: &str) -> Option<&'a IdentityRecord> {
    records.iter().find(|r| r.id == id)
}

fn hp(j: u8) -> HalfPeriodIndex {
    HalfPeriodIndex::new(j).expect("index in 1..=3")
}

/// `f'(z)` from the trapezoidal rule on the circle `|w - z| = r`
/// (32 nodes). Exponentially accurate while the circle stays well inside
/// the disc of analyticity.
fn cauchy_derivative(f: impl Fn(Complex64) -> Result<Complex64>, z: Complex64, r: f64) -> Result<Complex64> {
    const NODES: usize = 32;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..NODES {
        let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / NODES as f64);
        acc += f(z + e * r)? / e;
    }
    Ok(acc / (r * NODES as f64))
}

/// Radius used by [`cauchy_derivative`]; samples keep 0.05 from every pole.
const CAUCHY_RADIUS: f64 = 0.01;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cauchy_derivative_of_exp() {
        let z = Complex64::new(0.3, -0.2);
        let d = cauchy_derivative(|w| Ok(w.exp()), z, CAUCHY_RADIUS).unwrap();
        assert!((d - z.exp()).norm() < 1e-13);
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let r = IdentityRecord::new("a", "x = x", &["x", "x"]).variant("as-printed", |_| Ok(vec![]));
        assert!(matches!(
            try_register([r.clone(), r]),
            Err(AuditError::DuplicateId(id)) if id == "a"
        ));
    }
}
