use std::path::PathBuf;

use overdamped_heat::HeatError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Heat(#[from] HeatError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: malformed CSV: {message}")]
    CsvFormat { path: PathBuf, message: String },
    #[error("refusing to write an empty sweep")]
    EmptyRows,
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// Process exit code: 1 for bad input, 2 for numerical or I/O failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::EmptyRows => 1,
            CliError::Heat(e) if e.is_validation() => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
