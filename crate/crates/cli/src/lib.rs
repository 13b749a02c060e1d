//! The `wpprod` command line: evaluation, catalog audits and convergence tables.

pub mod app;
pub mod literal;
pub mod registry;

pub use app::{run, Cli, Failure};
