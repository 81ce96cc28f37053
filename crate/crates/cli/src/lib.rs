//! Scenario-driven verification front end.
//!
//! A scenario file (TOML) names a lattice, a suite selection, a seed, and
//! optional period points, isometries, Chern data and group parameters.
//! [`suites::run_suite`] executes the selected suites and produces a
//! [`report::Report`] that serializes to human-readable text or to a
//! stable JSON schema; with a fixed scenario and seed the structured
//! output is byte-identical across runs.

pub mod report;
pub mod scenario;
pub mod suites;

pub use report::{CheckRecord, Report, ReportFormat, Summary};
pub use scenario::{CliError, Scenario, SuiteName};
pub use suites::run_suite;
