use std::io;

use curvcalc_core::Error as CoreError;

/// Errors from reading inputs or running a command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { line, message: message.into() }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "E101",
            CliError::DimensionMismatch { .. } => "E009",
            CliError::Json(_) => "E102",
            CliError::Io { .. } => "E103",
            CliError::Usage(_) => "E100",
            CliError::Core(e) => e.code(),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
