use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{dividend} is not divisible by {divisor} in Z[v, v^-1]")]
    NotDivisible { dividend: String, divisor: String },

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("malformed decoration: {0}")]
    MalformedDelta(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("scale exceeded: {0}")]
    ScaleExceeded(String),

    #[error("unsupported field size q = {0} (supported: 2, 3, 5)")]
    UnsupportedField(u64),

    #[error("no candidate normalization matches the oracle")]
    NoConsistentConvention,

    #[error("stabilized dimensions differ across specializations: {0}")]
    SampleDegenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal error: {0}")]
    Internal(String),
}
