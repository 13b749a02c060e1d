//! Audit verdicts and their JSON/CSV serialisations.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Verdict for one identity, in order of precedence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    PassAsPrinted,
    PassCorrected { variant: String },
    PassUpToConstant { re: f64, im: f64 },
    Fail,
}

impl Status {
    pub fn is_fail(&self) -> bool {
        matches!(self, Status::Fail)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Status::PassAsPrinted => write!(f, "PASS_AS_PRINTED"),
            Status::PassCorrected { variant } => write!(f, "PASS_CORRECTED({variant})"),
            Status::PassUpToConstant { re, im } => {
                write!(f, "PASS_UP_TO_CONSTANT({re:.12}{im:+.12}i)")
            }
            Status::Fail => write!(f, "FAIL"),
        }
    }
}

/// Residual statistics of one variant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VariantStats {
    pub label: String,
    /// Samples at which the variant evaluated.
    pub n_valid: usize,
    /// Samples at which it failed with a non-domain error.
    pub n_errors: usize,
    pub max_rel_residual: Option<f64>,
    pub median_rel_residual: Option<f64>,
    /// Least-squares `c` in `E_0 ~ c E_1`, as `[re, im]`.
    pub fitted_constant: Option<[f64; 2]>,
    /// Largest deviation of the per-sample ratios from `c`, relative to `1 + |c|`.
    pub constant_dispersion: Option<f64>,
    /// Largest residual once `E_1` is scaled by `c`.
    pub constant_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditResult {
    pub id: String,
    pub anchor: String,
    pub seed: u64,
    pub tolerance: f64,
    /// Valid samples of the grid.
    pub n_samples: usize,
    /// Label of the reported variant: the winner, or the closest one on FAIL.
    pub variant: String,
    pub status: Status,
    pub variants: Vec<VariantStats>,
}

impl AuditResult {
    pub fn selected(&self) -> &VariantStats {
        self.variants
            .iter()
            .find(|v| v.label == self.variant)
            .expect("selected variant is registered")
    }

    /// One human-readable line.
    pub fn summary_line(&self) -> String {
        let s = self.selected();
        let max = s.max_rel_residual.map_or("-".to_string(), |x| format!("{x:.2e}"));
        format!("{:<32} {:<48} max_rel={} n={}", self.id, self.status.to_string(), max, self.n_samples)
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    anchor: &'a str,
    variant: &'a str,
    max_rel_residual: Option<f64>,
    median_rel_residual: Option<f64>,
    fitted_constant_re: Option<f64>,
    fitted_constant_im: Option<f64>,
    status: String,
    n_samples: usize,
    seed: u64,
}

fn sorted(results: &[AuditResult]) -> Vec<&AuditResult> {
    let mut v: Vec<_> = results.iter().collect();
    v.sort_by(|a, b| a.id.cmp(&b.id));
    v
}

/// JSON array of results ordered by id, with a trailing newline.
pub fn emit_json(results: &[AuditResult]) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&sorted(results))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(s: &str) -> Result<Vec<AuditResult>> {
    Ok(serde_json::from_str(s)?)
}

/// CSV with one row per identity, ordered by id.
pub fn emit_csv(results: &[AuditResult]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in sorted(results) {
        let s = r.selected();
        w.serialize(CsvRow {
            id: &r.id,
            anchor: &r.anchor,
            variant: &r.variant,
            max_rel_residual: s.max_rel_residual,
            median_rel_residual: s.median_rel_residual,
            fitted_constant_re: s.fitted_constant.map(|c| c[0]),
            fitted_constant_im: s.fitted_constant.map(|c| c[1]),
            status: r.status.to_string(),
            n_samples: s.n_valid,
            seed: r.seed,
        })?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

pub const CSV_COLUMNS: [&str; 10] = [
    "id",
    "anchor",
    "variant",
    "max_rel_residual",
    "median_rel_residual",
    "fitted_constant_re",
    "fitted_constant_im",
    "status",
    "n_samples",
    "seed",
];
