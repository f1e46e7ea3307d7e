//! Command implementations behind the `boundstate` binary.

pub mod commands;
pub mod format;
pub mod phase;
pub mod verify;

use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
        }
    }
}

impl From<boundstate_core::SpectrumError> for CliError {
    fn from(e: boundstate_core::SpectrumError) -> Self {
        CliError::Usage(e.to_string())
    }
}
