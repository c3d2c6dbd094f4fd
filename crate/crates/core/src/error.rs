use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("exponent {exponent} exceeds truncation order {order}")]
    ExponentOutOfRange { exponent: usize, order: usize },

    #[error("a truncated series needs at least one coefficient")]
    EmptySeries,

    #[error("invalid weight {0}: weights must be positive integers")]
    InvalidWeight(i64),

    #[error("invalid scale factor {0}: must be at least 1")]
    InvalidScale(u64),

    #[error("invalid dimension {0}: CP^n needs n >= 1")]
    InvalidDimension(u64),

    #[error("k = {k} is outside [-{m}, {m}]")]
    IndexOutOfRange { m: u64, k: i64 },

    #[error("a linear action needs at least 2 exponents, got {0}")]
    TooFewExponents(usize),

    #[error("exponent {0} is repeated: the fixed points are not isolated")]
    NonIsolatedFixedPoints(i64),

    #[error("fixed point {0:?} has no weights")]
    EmptyWeights(String),

    #[error("fixed point {label:?} has {found} weights, expected half_dim = {expected}")]
    WeightCountMismatch {
        label: String,
        expected: usize,
        found: usize,
    },

    #[error("invalid half_dim {0}: must be a positive integer")]
    InvalidHalfDim(i64),

    #[error("fixed point label {0:?} appears more than once")]
    DuplicateLabel(String),

    #[error("fixed-point data must contain at least one point")]
    NoFixedPoints,

    #[error("invalid sign {0:?}: expected +1 or -1")]
    InvalidSign(String),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("malformed fixed-point document: {0}")]
    Malformed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
