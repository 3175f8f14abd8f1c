use thiserror::Error;

/// Errors raised by the library.
///
/// Outcomes that are data rather than failures (a recursion dying, a
/// frequency mismatch, a prune identity that does not hold) are reported
/// through return values and never through this type.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow while computing index {index}")]
    Overflow { index: u64 },

    #[error("parameter violation: {0}")]
    Violation(String),

    #[error("no labelled tree is known for {0}; the family is evaluate-only")]
    NoTreeKnown(String),

    #[error("pruning precondition not met: {0}")]
    Precondition(String),

    #[error("skeleton mismatch: {0}")]
    Skeleton(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
