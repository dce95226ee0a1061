use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure classes shared by every operation. Each maps to one process exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input file, unknown vertex, or an out-of-range parameter.
    #[error("input error: {0}")]
    Input(String),
    /// A size guard was exceeded or the instance is outside what an operation supports.
    #[error("capability error: {0}")]
    Capability(String),
    /// A proven invariant failed. Always a bug.
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Io(_) => 1,
            Error::Capability(_) => 2,
            Error::Internal(_) => 4,
        }
    }
}
