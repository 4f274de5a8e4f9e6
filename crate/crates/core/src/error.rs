use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("weight list is empty")]
    EmptyWeights,

    #[error("weight at index {0} is not positive")]
    NonPositiveWeight(usize),

    #[error("ideals live in different rings")]
    RingMismatch,

    #[error("power exponent must be at least 1")]
    ZeroPower,

    #[error("the normality threshold needs at least two variables")]
    TooFewVariables,

    #[error("operation is undefined for the zero ideal")]
    ZeroIdeal,

    #[error("monomial of degree {degree} is below the required degree {required}")]
    DegreeTooSmall { degree: u64, required: u64 },

    #[error("leading coefficient {0} of the divisor is not a unit")]
    NonUnitLeadingCoefficient(i64),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("certification failed at p = {p}: {reason}")]
    CertificationFailed { p: u64, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
