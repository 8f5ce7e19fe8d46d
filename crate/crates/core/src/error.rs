use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A caller-supplied parameter is outside the operation's domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// The requested object would not fit in memory.
    #[error("too large: {0}")]
    TooLarge(String),
    /// Independent computations of the same quantity disagree.
    #[error("mismatch: {0}")]
    Mismatch(String),
    /// An exactness check failed. This indicates a bug, not bad input.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::error::Error::InvalidArgument(format!($($arg)*))
    };
}
pub(crate) use invalid;
