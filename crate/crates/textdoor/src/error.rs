//! Toolkit-wide error type.

use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at {path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("structural error: {0}")]
    Structural(String),

    #[error("no match for anchor {anchor:?}")]
    NoMatch { anchor: String },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("trigger produced no change: {0}")]
    NoOp(String),

    #[error("special-trigger violation: {rule}")]
    SpecialTrigger { rule: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("model format error: {0}")]
    Format(String),
}

impl Error {
    /// Exit code contract: 0 success, 1 i/o, 2 validation/config.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 1,
            _ => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
