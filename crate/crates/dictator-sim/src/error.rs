//! Harness-level errors and their process exit codes.

use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{}: {message}", path.display())]
    Parse { path: PathBuf, message: String },
    #[error("metrics series is empty")]
    EmptySeries,
    #[error("grid point {index}: {source}")]
    GridPoint {
        index: usize,
        #[source]
        source: Box<HarnessError>,
    },
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        HarnessError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        HarnessError::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 1 for configuration problems, 2 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::EmptySeries => 1,
            HarnessError::Io { .. } | HarnessError::Parse { .. } => 2,
            HarnessError::GridPoint { source, .. } => source.exit_code(),
        }
    }
}

impl From<sim_core::ConfigError> for HarnessError {
    fn from(err: sim_core::ConfigError) -> Self {
        HarnessError::Config(err.to_string())
    }
}
