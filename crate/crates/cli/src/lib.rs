//! Text and JSON formats for `braidlaz-core`, and the command-line front end.
//!
//! [`run`] is the whole CLI as a function from arguments and standard input
//! to an [`Outcome`]; the binary only prints it.

pub mod app;
pub mod json;
pub mod text;

pub use app::{run, Cli, Format, Outcome};

/// Exit code 2 for malformed input, 1 for a well-formed request the
/// library rejects.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
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
