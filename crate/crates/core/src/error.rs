use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("SIZE_LIMIT: {terms} intermediate terms exceed the cap of {cap}")]
    SizeLimit { terms: usize, cap: usize },
    #[error("ORDER_VIOLATION: rule {lhs} -> {rhs} does not decrease the monomial order")]
    OrderViolation { lhs: String, rhs: String },
    #[error("DUPLICATE_LEADING: two rules share the leading word {0}")]
    DuplicateLeading(String),
    #[error("INCONSISTENT: relations force {0} = 0")]
    Inconsistent(String),
    #[error("NO_STAR: algebra {0} carries no star table")]
    NoStar(String),
    #[error("PARSE: {msg} at offset {pos} in {input:?}")]
    Parse { msg: String, pos: usize, input: String },
    #[error("UNKNOWN_GENERATOR: {0}")]
    UnknownGenerator(String),
    #[error("TOWER: {0}")]
    Tower(String),
    #[error("DEGREE_EXCEEDED: {0}")]
    DegreeExceeded(String),
    #[error("NOT_HOPF_IDEAL: generator {generator} fails {axiom}")]
    NotHopfIdeal { generator: String, axiom: String },
    #[error("NOT_INVERTIBLE: {0}")]
    NotInvertible(String),
    #[error("NOT_MODULE_ALGEBRA: {axiom} fails, witness {witness}")]
    NotModuleAlgebra { axiom: String, witness: String },
    #[error("PROPERTY_FAIL: {which}, witness {witness}")]
    PropertyFail { which: String, witness: String },
    #[error("PRECONDITION_FAIL: {0}")]
    PreconditionFail(String),
    #[error("NOT_SURJECTIVE: {0}")]
    NotSurjective(String),
    #[error("INCOMPATIBLE: pieces {i},{j} differ by {difference}")]
    Incompatible { i: usize, j: usize, difference: String },
    #[error("UNKNOWN_NAME: {0}")]
    UnknownName(String),
    #[error("Q_ZERO: the deformation parameter must be nonzero")]
    QZero,
    #[error("SIZE_MISMATCH: {0}")]
    SizeMismatch(String),
    #[error("COMPLETION: {0}")]
    Completion(String),
    #[error("DENSITY: phase jump {jump} at sample {index} exceeds the winding guard")]
    Density { index: usize, jump: String },
    #[error("SINGULAR: determinant vanishes at sample {index}")]
    Singular { index: usize },
    #[error("CONFIG_ERROR: {0}")]
    Config(String),
}
