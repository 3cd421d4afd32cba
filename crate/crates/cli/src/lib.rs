//! Front end for the `infchow` kernel: expression syntax, input documents,
//! command dispatch and reports.

pub mod commands;
pub mod doc;
pub mod eval;
pub mod expr;
pub mod report;

pub use commands::{run, Base, Command, Opts};
pub use report::Report;

/// Malformed or unusable input; the binary exits with status 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for InputError {}
