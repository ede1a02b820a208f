use std::fmt;
use std::process::ExitCode;

use natstate_core::Error as CoreError;

/// Failure classes, each with its own process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad arguments, malformed config or spec files, unwritable output.
    Input(String),
    /// An optimizer or quadrature did not converge.
    Convergence(String),
    /// At least one verification check failed. Carries the rendered report.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Convergence(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Convergence(m) => write!(f, "convergence failure: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidParameter(_) => CliError::Input(e.to_string()),
            CoreError::QuadratureNotConverged { .. } | CoreError::NotConverged { .. } => {
                CliError::Convergence(e.to_string())
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
