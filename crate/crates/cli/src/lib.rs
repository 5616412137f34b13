//! Group expressions, verification suites and reports for the `clpforge` binary.

pub mod expr;
pub mod realize;
pub mod report;
pub mod suites;

pub use expr::{parse_group, GroupExpr, ParseError};
pub use realize::{realize, Realized};
pub use report::{Check, Status, SuiteReport};
pub use suites::{run_suite, SUITES};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] clpforge_core::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("bundled data {name} has order {found}, expected {expected}")]
    DataOrder { name: String, found: String, expected: u64 },
}

impl CliError {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, CliError::Core(e) if e.is_resource_cap())
    }
}
