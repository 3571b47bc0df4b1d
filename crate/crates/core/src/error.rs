use thiserror::Error;

/// Errors raised across the analysis pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("order is undefined for the zero function")]
    ZeroFunction,
    #[error("square-free part of degree {degree} (multiplicity {multiplicity}) has no linear split: {part}")]
    Unsplittable { part: String, degree: usize, multiplicity: usize },
    #[error("series are expanded at different base points ({left} vs {right})")]
    BasePointMismatch { left: String, right: String },
    #[error("division by a series that vanishes up to its truncation order")]
    DivisionByZeroSeries,
    #[error("input is constant, its Schwarzian is undefined")]
    ConstantInput,
    #[error("cancellation consumed every trustworthy coefficient")]
    TruncationExhausted,
    #[error("degenerate Möbius map: ad - bc = 0")]
    DegenerateMap,
    #[error("coefficient has a zero or pole at {0}")]
    SingularCoefficient(String),
    #[error("not a zero of u + b: {0}")]
    NotAZero(String),
    #[error("no auxiliary function is defined for class {0}")]
    NoAuxiliary(String),
    #[error("unsupported candidate: {0}")]
    UnsupportedCandidate(String),
    #[error("expansion point {0} is singular for the candidate or the coefficients")]
    SingularPoint(String),
    #[error("composition requires {0}")]
    InvalidComposition(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("exponent of S(f) must be a positive integer, got {0}")]
    NonPositiveExponent(String),
    #[error("right-hand side has a zero denominator")]
    ZeroDenominator,
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
