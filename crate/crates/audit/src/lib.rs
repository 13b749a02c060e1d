//! Numerical audit of the displayed product, sum and transformation
//! identities for the Weierstrass functions.
//!
//! Each [`IdentityRecord`] holds the expressions of one display and the
//! readings (variants) under which it may hold. [`audit`] samples the record
//! on a seeded grid and classifies it as passing as printed, passing under a
//! corrected reading, passing up to a constant factor, or failing.

pub mod catalog;
pub mod engine;
pub mod error;
pub mod faults;
pub mod record;
pub mod report;
pub mod sample;

pub use catalog::{lookup, register_catalog, try_register};
pub use faults::planted;
pub use engine::{audit, audit_all, evaluates_at, residual, select};
pub use error::{AuditError, Result};
pub use record::{Ctx, IdentityRecord, Values, Variant, AS_PRINTED};
pub use report::{emit_csv, emit_json, parse_json, AuditResult, Status, VariantStats, CSV_COLUMNS};
pub use sample::{Domain, Sample, SampleGrid, Step};
