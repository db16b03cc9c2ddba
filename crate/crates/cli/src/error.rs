//! Error-to-exit-code mapping for the CLI.

use roadchange::Error as CoreError;

/// Process exit codes: 0 success, 2 I/O, 3 parse, 4 no registration signal,
/// 5 empty road network.
pub type ExitCode = i32;

#[derive(Debug)]
pub struct CliError {
    pub code: ExitCode,
    pub message: String,
}

impl CliError {
    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for CliError {}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        let code = match &err {
            CoreError::Io(_) => 2,
            CoreError::NoSignal => 4,
            CoreError::EmptyNetwork => 5,
            CoreError::MalformedDocument(_)
            | CoreError::SchemaMismatch(_)
            | CoreError::Parse(_)
            | CoreError::DimensionMismatch(..)
            | CoreError::SliceLengthMismatch(..) => 3,
            CoreError::UnknownNode(_) | CoreError::Infeasible(_) => 3,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::io(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::parse(err.to_string())
    }
}
