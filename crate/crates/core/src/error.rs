use thiserror::Error;

/// Errors raised by polynomial, criterion and oracle operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero set is empty")]
    EmptyZeros,
    #[error(
        "zeros must be sorted in descending order (entry {index} is larger than its predecessor)"
    )]
    Unsorted { index: usize },
    #[error("the zero set contains a value that cannot be ordered")]
    Unordered,
    #[error("degenerate interval: the lower end must be strictly below the upper end")]
    DegenerateInterval,
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("the polynomial is not hyperbolic")]
    NotHyperbolic,
    #[error("expected {expected} values, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("gap {index} is negative")]
    NegativeGap { index: usize },
    #[error("all four zeros coincide, so the quartic cannot be normalized")]
    DegenerateQuartic,
    #[error("internal disagreement between equivalent criteria: {0}")]
    InternalDisagreement(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
