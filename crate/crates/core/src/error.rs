use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Input that is well-formed but violates an operation's precondition.
    #[error("{0}")]
    Domain(String),

    /// Options that cannot be combined, caught before any work starts.
    #[error("usage: {0}")]
    Usage(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit status: 2 usage, 3 bad input data, 4 internal fault.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Usage(_) => 2,
            Error::Parse { .. } | Error::Domain(_) | Error::Io(_) | Error::Json(_) => 3,
            Error::Invariant(_) => 4,
        }
    }
}
