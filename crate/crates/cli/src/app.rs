//! Argument parsing and command dispatch.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use wp_audit::{audit_all, emit_csv, emit_json, planted, register_catalog, select, AuditError, SampleGrid};
use wp_products::{Complex64, TruncationPolicy};

use crate::literal::{format_complex, parse_complex};
use crate::registry::{eval, eval_product, Function};

pub const EXIT_FAIL: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_DOMAIN: u8 = 3;
pub const EXIT_EMPTY_GRID: u8 = 4;

/// Environment variable selecting the floating-point backend (`f64` or `f32`).
pub const PRECISION_VAR: &str = "WP_PRODUCTS_PRECISION";

#[derive(Debug, Parser)]
#[command(name = "wpprod", version, about = "Weierstrass, theta, sigma and xi functions on the lattice (2, 2 tau), and an audit of their product and sum representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function.
    Eval {
        /// wp, wp_prime, sigma, sigma1..3, zeta, theta1..4, xi.<b>.<g>, e1..3, eta, k, kprime
        function: Function,
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        /// Target relative truncation tolerance.
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Print the shortest representation that round-trips exactly.
        #[arg(long)]
        full: bool,
    },
    /// Audit the identity catalog.
    Audit {
        /// Glob over identity ids.
        #[arg(long)]
        ids: Option<String>,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 1e-12)]
        eps: f64,
        /// Transformation orders to sample, e.g. 3,5.
        #[arg(long, value_delimiter = ',')]
        orders: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Report path; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Audit the planted faults instead of the catalog.
        #[arg(long)]
        faults: bool,
    },
    /// Tabulate a function against a fixed number of series terms or product factors.
    Convergence {
        function: Function,
        #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        tau: Complex64,
        #[arg(long, default_value_t = 1)]
        k_min: usize,
        #[arg(long, default_value_t = 30)]
        k_max: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    F64,
    F32,
}

impl Precision {
    pub fn from_env() -> Result<Self, Failure> {
        match std::env::var(PRECISION_VAR).ok().as_deref() {
            None | Some("") | Some("f64") => Ok(Self::F64),
            Some("f32") => Ok(Self::F32),
            Some(other) => Err(Failure::usage(format!("{PRECISION_VAR}={other:?}: expected f64 or f32"))),
        }
    }
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self { code: EXIT_USAGE, message }
    }
}

fn library_code(e: &wp_products::Error) -> u8 {
    use wp_products::Error as E;
    match e {
        E::InvalidIndex(_) | E::InvalidOrder { .. } | E::InvalidPolicy(_) | E::ModeMismatch(_) => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

impl From<wp_products::Error> for Failure {
    fn from(e: wp_products::Error) -> Self {
        Self { code: library_code(&e), message: e.to_string() }
    }
}

impl From<AuditError> for Failure {
    fn from(e: AuditError) -> Self {
        let code = match &e {
            AuditError::EmptyGrid { .. } => EXIT_EMPTY_GRID,
            AuditError::NoMatch(_) | AuditError::Pattern(_) => EXIT_USAGE,
            AuditError::Library(inner) => library_code(inner),
            _ => EXIT_FAIL,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_FAIL, message: e.to_string() }
    }
}

fn policy(eps: f64) -> Result<TruncationPolicy, Failure> {
    Ok(TruncationPolicy::default().with_eps(eps)?)
}

/// Runs one command; `out` receives results, `err` the audit summary when
/// the report itself goes to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, Failure> {
    let precision = Precision::from_env()?;
    match cli.command {
        Command::Eval { function, z, tau, eps, full } => {
            let p = policy(eps)?;
            let (v, k) = match precision {
                Precision::F64 => eval::<f64>(function, z, tau, p)?,
                Precision::F32 => eval::<f32>(function, z, tau, p)?,
            };
            writeln!(out, "{}", format_complex(v, full))?;
            writeln!(out, "K={k}")?;
            Ok(0)
        }
        Command::Convergence { function, z, tau, k_min, k_max } => {
            if k_min == 0 || k_min > k_max {
                return Err(Failure::usage(format!("need 1 <= k-min <= k-max, got {k_min}..{k_max}")));
            }
            let at = |k: usize| {
                let p = TruncationPolicy::fixed_terms(k);
                match precision {
                    Precision::F64 => eval_product::<f64>(function, z, tau, p),
                    Precision::F32 => eval_product::<f32>(function, z, tau, p),
                }
            };
            let reference = at(k_max)?;
            writeln!(out, "K,re,im,abs_delta")?;
            for k in k_min..=k_max {
                let v = at(k)?;
                writeln!(out, "{k},{:e},{:e},{:e}", v.re, v.im, (v - reference).norm())?;
            }
            Ok(0)
        }
        Command::Audit { ids, seed, samples, eps, orders, format, out: path, faults } => {
            if precision == Precision::F32 {
                writeln!(err, "note: the audit always runs in f64")?;
            }
            let catalog = if faults { planted() } else { register_catalog() };
            let records: Vec<_> = select(&catalog, ids.as_deref())?.into_iter().cloned().collect();
            let grid = SampleGrid {
                orders,
                ..SampleGrid::new(seed, samples)
            };
            let results = audit_all(&records, &grid, &policy(eps)?)?;
            let report = match format {
                Format::Json => emit_json(&results)?,
                Format::Csv => emit_csv(&results)?,
            };
            let summary: &mut dyn Write = match &path {
                Some(p) => {
                    fs::write(p, &report)?;
                    out
                }
                None => {
                    out.write_all(report.as_bytes())?;
                    err
                }
            };
            for r in &results {
                writeln!(summary, "{}", r.summary_line())?;
            }
            Ok(if results.iter().any(|r| r.status.is_fail()) { EXIT_FAIL } else { 0 })
        }
    }
}
