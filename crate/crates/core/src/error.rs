use thiserror::Error;

/// Failures surfaced by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),
    /// A configured size limit would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An operation was called outside its mathematical hypotheses.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An exactness tripwire fired; this always indicates a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("{file}:{line}: {msg}")]
    Parse {
        file: String,
        line: usize,
        msg: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
