//! Shared error type for the whole toolkit.
//!
//! The variants map onto the CLI exit codes: `Invariant` means a checked
//! mathematical fact failed (exit 1), `Input`/`Precondition`/`Parse` mean the
//! caller handed us something unusable (exit 2), `Resource` means a
//! configured cap was exceeded (exit 3).

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("mathematical invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI should use for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) => 1,
            Error::Input(_) | Error::Precondition(_) | Error::Parse(_) | Error::Io(_) => 2,
            Error::Resource(_) => 3,
        }
    }
}
