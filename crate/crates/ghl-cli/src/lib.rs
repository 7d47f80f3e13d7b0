//! Command-line front end for the exact group-(co)homology engine: spec
//! parsing, cached computation pipelines, induced restriction/corestriction
//! maps, the verification suites, and exploratory tabulations.

use std::fmt;

pub mod cache;
pub mod checks;
pub mod experiments;
pub mod jobspec;
pub mod records;
pub mod run;

/// Error carrying the process exit-code contract: 2 for usage errors
/// (malformed specifiers, unknown names), 1 for computation or verification
/// failures.
#[derive(Debug)]
pub struct CliError {
    pub message: String,
    pub exit_code: i32,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub type CliResult<T> = Result<T, CliError>;

/// A malformed request: exits with code 2.
pub fn usage(message: String) -> CliError {
    CliError { message, exit_code: 2 }
}

/// A well-formed request the engine could not satisfy: exits with code 1.
pub fn failure(message: String) -> CliError {
    CliError { message, exit_code: 1 }
}
