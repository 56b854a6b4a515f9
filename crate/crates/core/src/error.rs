use std::path::PathBuf;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside an operation's documented domain (bad coordinates,
    /// unsupported dimension, invalid configuration, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed text input (point files, permutation files, model files).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// I/O failure, tagged with the path involved.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Violated internal invariant; indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// A [`Error::Domain`] with the given message.
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// A [`Error::Parse`] at the given 1-based line.
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    /// An [`Error::Io`] tagged with the path involved.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
