use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: io::Error },
    #[error("cannot parse {}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Model(#[from] voi_core::Error),
}

impl CliError {
    /// 2 for missing or malformed input, 3 for domain errors, 1 for output failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Field { .. } => 2,
            CliError::Model(voi_core::Error::Config(_)) => 2,
            CliError::Model(_) => 3,
            CliError::Write { .. } => 1,
        }
    }
}
