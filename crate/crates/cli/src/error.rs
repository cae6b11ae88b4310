//! CLI error classes and their exit codes.
//!
//! Exit codes: 0 success, 2 parse errors (malformed input files or
//! schemas), 3 configuration errors (invalid settings or synthetic-spec
//! bounds), 4 runtime errors (missing files, unknown pairs, sampling
//! failures).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error in {path}{location}: {message}", location = at(.row, .col))]
    Parse {
        path: String,
        row: Option<usize>,
        col: Option<String>,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Runtime(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn at(row: &Option<usize>, col: &Option<String>) -> String {
    match (row, col) {
        (Some(r), Some(c)) => format!(" (row {r}, column {c})"),
        (Some(r), None) => format!(" (row {r})"),
        (None, Some(c)) => format!(" (column {c})"),
        (None, None) => String::new(),
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } => 2,
            CliError::Config(_) => 3,
            CliError::Runtime(_) | CliError::Io { .. } => 4,
        }
    }

    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}

impl From<deltap_core::Error> for CliError {
    fn from(e: deltap_core::Error) -> Self {
        use deltap_core::Error as E;
        match e {
            E::Config(_) | E::TooFewDraws { .. } | E::OracleRange(_) => {
                CliError::Config(e.to_string())
            }
            E::DataShape(_) | E::UnknownVariable(_) | E::Numerical(_) => {
                CliError::Runtime(e.to_string())
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
