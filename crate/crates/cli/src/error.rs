use std::fmt;
use std::process::ExitCode;

use landau_zener::Error as CoreError;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit 2.
    Validation(String),
    /// Reading or writing files; exit 3.
    Io(String),
    /// The computation itself failed; exit 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
            CliError::Compute(_) => 1,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Compute(m) => write!(f, "computation failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter { .. }
            | CoreError::InvalidGrid(_)
            | CoreError::InvalidPipeline(_)
            | CoreError::NonAlternating(_)
            | CoreError::EmptySequence => CliError::Validation(e.to_string()),
            CoreError::Overflow { .. } | CoreError::TooFewExtrema { .. } | CoreError::WorkerPool(_) => {
                CliError::Compute(e.to_string())
            }
        }
    }
}
