use thiserror::Error;

/// Failure categories shared by every module.
///
/// The CLI maps `Domain` and `Precondition` to a validation exit code,
/// `OutOfScope` to its own code, and the rest to verification failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
    #[error("structural error: {0}")]
    Structural(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invariant {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::Invariant(format!($($fmt)+)));
        }
    };
}
pub(crate) use invariant;
