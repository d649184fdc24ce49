use thiserror::Error;

/// Errors raised by the library.
///
/// The variants map one-to-one onto the CLI exit-code classes: invalid input,
/// empty set, resource limits, and mathematical disagreement.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty set: {0}")]
    EmptySet(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("integer overflow: {0}")]
    Overflow(String),

    /// An exact computation contradicted a proven statement. Either a bug or a
    /// counterexample; never silently classified.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
