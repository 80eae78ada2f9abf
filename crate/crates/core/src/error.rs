use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size mismatch: expected {expected} vertices, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("search space too large: {0}")]
    SearchSpace(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("no certificate found: {0}")]
    NoCertificate(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub(crate) fn check_size(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::SizeMismatch { expected, actual })
    }
}
