use std::fmt;

/// Library-level error type.
///
/// `Validation` means the caller handed us something outside a function's
/// domain (bad dimensions, non-unitary matrix, parameters off the sphere).
/// `Numerical` means an internal computation failed to meet its accuracy
/// contract (for example an eigensolver residual above its bound); results
/// carrying a `Numerical` error must not be trusted.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    Validation(String),
    Numerical(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Validation(msg) => write!(f, "validation error: {msg}"),
            Error::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn numerical(msg: impl Into<String>) -> Error {
    Error::Numerical(msg.into())
}
