use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is reducible over F_{1}")]
    ReducibleModulus(String, u32),
    #[error("modulus must be monic of degree {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: String },
    #[error("field order {0} exceeds the supported maximum {1}")]
    FieldTooLarge(u64, u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("{base} is not a subfield of {ext}")]
    NotASubfield { base: String, ext: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos} (variables are x1..x{n})")]
    UnknownVariable { name: String, pos: usize, n: usize },
    #[error("coefficient `{0}` is not an element of the field")]
    CoefficientNotInField(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("enumeration needs {required} evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("point set is empty")]
    EmptySet,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("no zero found: {0}")]
    NoZeroFound(String),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("could not write repro file {path}: {msg}")]
    ReproFileWrite { path: String, msg: String },
    #[error("config error: {0}")]
    Config(String),
}
