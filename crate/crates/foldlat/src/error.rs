use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator matrix is singular")]
    SingularLattice,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionError { expected: usize, got: usize },
    #[error("lattice does not tile the shape: {0}")]
    NotATiling(String),
    #[error("direction {0} does not define a folding")]
    NotAFolding(String),
    #[error("invalid shape parameters: {0}")]
    InvalidShapeParams(String),
    #[error("morph not applicable: {0}")]
    MorphNotApplicable(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {0} is too large for log tables")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("polynomial {0} is not primitive")]
    NotPrimitivePolynomial(String),
    #[error("B2 set modulus {got} does not match shape size {expected}")]
    ModulusMismatch { expected: u64, got: u64 },
    #[error("sweep needs {cost} checks, budget is {budget}")]
    TooLarge { cost: u64, budget: u64 },
    #[error("parameters not admissible: {0}")]
    ParamsNotAdmissible(String),
    #[error("shape needs field degree {0}, maximum is 24")]
    ShapeTooLarge(u32),
    #[error("syndrome is not explained by any burst of length at most 2")]
    UncorrectablePattern,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("window has {got} cells, array needs {expected}")]
    WindowSizeMismatch { expected: usize, got: usize },
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("classic folding not available: {0}")]
    NotFoldable(String),
    #[error("no padded shape found: {0}")]
    PaddingNotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
