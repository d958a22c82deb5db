use std::path::PathBuf;

use quantum_otto::DomainError;
use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("{context}: {source}")]
    Domain {
        context: String,
        #[source]
        source: DomainError,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl HarnessError {
    pub fn domain(context: impl Into<String>) -> impl FnOnce(DomainError) -> Self {
        let context = context.into();
        move |source| HarnessError::Domain { context, source }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> Self {
        let path = path.into();
        move |source| HarnessError::Io { path, source }
    }

    /// Process exit code: 1 configuration, 2 physical domain, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Unsupported(_) => 1,
            HarnessError::Domain { .. } => 2,
            HarnessError::Io { .. } => 3,
        }
    }
}
