//! Library behind the `hkrlab` binary: suite execution, report assembly and
//! one-shot evaluations.

pub mod commands;
pub mod input;
pub mod report;
pub mod suites;

pub use report::{Case, Status, SuiteReport, Summary};
pub use suites::{run_suite, SuiteConfig, SUITES};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, unknown names.
    #[error("{0}")]
    Usage(String),
    /// The input was well formed but the computation refused it.
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}
