use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cubic_core::Error),
    #[error("cache {}: line {line}: {msg}", path.display())]
    CacheLine { path: PathBuf, line: usize, msg: String },
    #[error("cache {}: {msg}", path.display())]
    Cache { path: PathBuf, msg: String },
    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 usage, 3 domain, 4 cache.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(_) => 3,
            CliError::CacheLine { .. } | CliError::Cache { .. } | CliError::Io { .. } => 4,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
