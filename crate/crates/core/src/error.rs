use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("odd characteristic required")]
    OddCharRequired,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be monic, of degree m, and irreducible over GF(p)")]
    BadModulus,
    #[error("duplicate interpolation node {0}")]
    DuplicateNode(u64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("family spec violation: {0}")]
    SpecViolation(String),
    #[error("subset size mismatch: expected {expected}, got {got}")]
    SubsetSizeMismatch { expected: usize, got: usize },
    #[error("evaluation set contains b")]
    EvaluationSetContainsB,
    #[error("explicit census formula requires a prime field")]
    NonPrimeField,
    #[error("formula produced a non-integer value (transcription bug)")]
    NonIntegerResult,
    #[error("parameter out of range: {0}")]
    RangeViolation(String),
    #[error("no solution found within budget")]
    NoSolutionFound,
    #[error("characteristic divides t+1")]
    CharacteristicDividesTPlusOne,
    #[error("subset size out of range")]
    SizeOutOfRange,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
