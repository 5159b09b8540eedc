use thiserror::Error;

/// Errors surfaced by the library.
///
/// `Input` covers malformed or out-of-contract arguments; `Capacity` covers
/// requests that would exceed the enumeration budget or the supported
/// envelope. The distinction matters to callers that map errors to exit
/// codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn capacity_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Capacity(msg.into()))
}
