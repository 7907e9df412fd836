use std::process::ExitCode;

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad input: unreadable file, malformed CSV or scenario, unknown names.
    #[error("{0}")]
    Input(String),

    #[error("{0}")]
    Core(#[from] dealab::Error),

    #[error("{failed} assertion(s) failed")]
    AssertionsFailed { failed: usize },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::AssertionsFailed { .. } => ExitCode::from(1),
            _ => ExitCode::from(2),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Input(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Input(format!("invalid scenario JSON: {err}"))
    }
}
