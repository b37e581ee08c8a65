use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("numeric failure: {0}")]
    Numeric(tdab_core::Error),
}

impl CliError {
    /// 0 success, 2 config, 3 I/O, 4 numeric solver failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Write { .. } | CliError::Read { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

impl From<tdab_core::Error> for CliError {
    fn from(e: tdab_core::Error) -> Self {
        match e {
            tdab_core::Error::Solver(_) => CliError::Numeric(e),
            other => CliError::Config(other.to_string()),
        }
    }
}
