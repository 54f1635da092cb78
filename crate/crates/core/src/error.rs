use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("valuation {0} is negative; element is outside the ring of integers")]
    NegativeValuation(i64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("operands live in different fields")]
    FieldMismatch,

    #[error("invalid group spec: {0}")]
    InvalidGroupSpec(String),
    #[error("group does not close within the order budget {0}")]
    GroupTooLarge(usize),
    #[error("invalid group table: {0}")]
    InvalidGroupTable(String),
    #[error("unknown group element {0:?}")]
    UnknownElement(String),
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("the identity cannot be used as an ICC probe")]
    IdentityProbe,

    #[error("element norm {0} exceeds 1")]
    NormExceedsOne(String),
    #[error("vector {index} has norm {norm}, expected exactly 1")]
    NormNotOne { index: usize, norm: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not constant along diagonals: entry ({row}, {col})")]
    NotDiagonalConstant { row: usize, col: usize },
    #[error("convergence check needs at least one stage")]
    EmptyStages,
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),

    #[error("structure constants are not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("subspace is not a left ideal")]
    NotLeftIdeal,
    #[error("enumeration of {required} elements exceeds budget {budget}")]
    BudgetExceeded { required: String, budget: u64 },
    #[error("algebra is not a Baer ring")]
    NotBaer,
    #[error("algebra is not semisimple: {0}")]
    NotSemisimple(String),
    #[error("splitting requires extending the field by degree {degree}")]
    NeedsFieldExtension { degree: u32 },
    #[error("component of dimension {dim} over a center of degree {degree} is not n^2 * d")]
    NonSquareDimension { dim: usize, degree: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
