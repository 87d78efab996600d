use thiserror::Error;

/// Errors raised by the landscape toolkit.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Full enumeration was requested beyond the configured dimension cap.
    #[error("capacity error: n = {n} exceeds the enumeration cap of {cap}")]
    Capacity { n: u32, cap: u32 },

    #[error("not found: {0}")]
    NotFound(String),

    /// A persisted atlas could not be parsed or failed its integrity check.
    #[error("format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
