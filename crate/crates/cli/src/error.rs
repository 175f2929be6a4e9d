use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Lib(#[from] gedspace::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: gedspace::Error },
    #[error("{0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 input or usage problems, 2 order guard exceeded, 3 unknown suite,
    /// 4 a validation or suite check failed.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(gedspace::Error::OrderGuard { .. }) => 2,
            CliError::Parse {
                source: gedspace::Error::OrderGuard { .. },
                ..
            } => 2,
            CliError::Lib(gedspace::Error::UnknownSuite(_)) => 3,
            CliError::Failed(_) => 4,
            _ => 1,
        }
    }
}
