use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the pipeline and its stages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed post at {path}:{line}: {reason}")]
    MalformedPost {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("duplicate post id `{id}` at {path}:{line}")]
    DuplicatePostId {
        id: String,
        path: PathBuf,
        line: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid resource file {path}: {reason}")]
    Resource { path: PathBuf, reason: String },

    #[error("linker request failed: {0}")]
    Linker(String),

    #[error("malformed linker response: {0}")]
    LinkerResponse(String),

    #[error("type service request failed: {0}")]
    TypeService(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error("clique enumeration budget of {max_steps} steps exceeded")]
    CliqueBudget { max_steps: u64 },
}

impl Error {
    /// Remote failures worth retrying; everything else is permanent.
    pub fn is_retryable(&self) -> bool {
        matches!(self, Error::Linker(_) | Error::TypeService(_))
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
