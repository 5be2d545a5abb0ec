use thiserror::Error;

/// Errors raised by the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// An operation was applied outside its mathematical domain, e.g. the
    /// inverse of zero or a grid function of the wrong size.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation exists but is not supported for these parameters.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The requested field could not be constructed.
    #[error("invalid field: {0}")]
    InvalidField(String),

    /// A caller-supplied precondition did not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
