use thiserror::Error;

/// Errors raised by the arithmetic, series, tableau and identity layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("divisor series has zero constant term")]
    NonUnit,

    #[error("inner series of a composition must have zero constant term")]
    Composition,

    #[error("comparison up to index {upto} exceeds series order {order}")]
    Precision { upto: usize, order: usize },

    #[error("cannot parse {0:?}")]
    Parse(String),

    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
