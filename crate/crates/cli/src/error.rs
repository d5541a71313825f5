use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}:{line}:{column}: not an integer: {token:?}", path.display())]
    Parse {
        path: PathBuf,
        line: u64,
        column: u64,
        token: String,
    },

    #[error("{}: {message}", path.display())]
    Csv { path: PathBuf, message: String },

    #[error("{}: {source}", path.display())]
    CorruptIndex {
        path: PathBuf,
        source: cartmatch::Error,
    },

    #[error("engines disagree: {0}")]
    Disagreement(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Io { .. } | CliError::Parse { .. } | CliError::Csv { .. } => 2,
            CliError::CorruptIndex { .. } => 3,
            CliError::Disagreement(_) => 4,
        }
    }
}

impl From<cartmatch::Error> for CliError {
    fn from(e: cartmatch::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}
