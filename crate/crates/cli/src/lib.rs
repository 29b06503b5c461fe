//! Command-line front end: expression parsing, command dispatch and
//! deterministic JSON reports.

pub mod commands;
pub mod config;
pub mod parse;
pub mod report;
pub mod selftest;

use ccr_hopf::algebra::AlgebraError;
use ccr_hopf::fock::FockError;
use ccr_hopf::hopf::HopfError;
use ccr_hopf::measure::MeasureError;
use ccr_hopf::scalar::ScalarError;
use thiserror::Error;

pub use commands::{run, Cli, Command};
pub use report::ReportDocument;

/// Any error that stops a command before it can report; exit status 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot parse expression: {0}")]
    Parse(#[from] parse::ParseError),
    #[error("algebra: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("hopf: {0}")]
    Hopf(#[from] HopfError),
    #[error("fock: {0}")]
    Fock(#[from] FockError),
    #[error("measure: {0}")]
    Measure(#[from] MeasureError),
    #[error("scalar: {0}")]
    Scalar(#[from] ScalarError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Exit status for a finished report.
pub fn exit_code(report: &ReportDocument) -> i32 {
    if report.summary.ok {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}
