use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("negative discriminant {0}")]
    NegativeDiscriminant(BigRational),

    #[error("quadratic scalars with different radicands ({0} and {1})")]
    RadicandMismatch(String, String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("indices must differ (got {0} twice)")]
    EqualIndices(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("operation requires n >= 2 (free-product structure); got {0}")]
    Unsupported(String),

    #[error("enumeration of {requested} words exceeds the budget of {budget}")]
    BudgetExceeded { requested: u128, budget: u64 },

    #[error("empty word")]
    EmptyWord,

    #[error("zero divisor class")]
    ZeroClass,

    #[error("reduction did not reach the nef cone within {steps} steps")]
    ReductionExhausted {
        steps: usize,
        last: Vec<BigRational>,
    },

    #[error("point lies at infinity of the affine chart (coordinate sum is zero)")]
    AtInfinity,

    #[error("point is not on the quadric")]
    NotIsotropic,

    #[error("{0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Singular => "singular",
            Error::NotSymmetric => "not_symmetric",
            Error::NegativeDiscriminant(_) => "negative_discriminant",
            Error::RadicandMismatch(..) => "radicand_mismatch",
            Error::InvalidParameters(_) => "invalid_parameters",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::EqualIndices(_) => "equal_indices",
            Error::InvalidPermutation(_) => "invalid_permutation",
            Error::Unsupported(_) => "unsupported",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::EmptyWord => "empty_word",
            Error::ZeroClass => "zero_class",
            Error::ReductionExhausted { .. } => "reduction_exhausted",
            Error::AtInfinity => "at_infinity",
            Error::NotIsotropic => "not_isotropic",
            Error::Parse(_) => "parse",
        }
    }

    /// Process exit status: 3 for a failed reduction, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ReductionExhausted { .. } => 3,
            _ => 2,
        }
    }
}
