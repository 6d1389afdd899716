use num_rational::BigRational;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Where the negativity scan gave up: the subinterval `(lo, hi]` and the
/// reduced constant that stayed positive there.
#[derive(Debug, Clone, PartialEq)]
pub struct FailureWitness {
    pub lo: BigRational,
    pub hi: BigRational,
    pub reduced_constant: BigRational,
    /// The polynomial is positive just right of the left end of the
    /// subinterval, so no amount of subdivision can succeed.
    pub positive_at_left_end: bool,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate triangle: apex ordinate b = {0} must be positive")]
    DegenerateTriangle(f64),
    #[error("unknown region `{0}`")]
    UnknownRegion(String),
    #[error("unknown constant `{0}`")]
    UnknownConstant(String),
    #[error("unknown lemma polynomial `{0}`")]
    UnknownName(String),
    #[error("unknown replay case `{0}`")]
    UnknownCase(String),
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("invalid precision request: {0}")]
    InvalidPrecision(String),
    #[error("angle {0} outside the admissible range")]
    AngleOutOfRange(f64),
    #[error("argument outside the domain: {0}")]
    DomainError(String),
    #[error("validity condition not met: {0}")]
    ValidityViolation(String),
    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),
    #[error("zero-width interval")]
    ZeroWidthInterval,
    #[error("negativity scan exhausted its depth on ({}, {}]", .0.lo, .0.hi)]
    DepthExhausted(Box<FailureWitness>),
    #[error("degenerate shape: {0}")]
    DegenerateShape(String),
    #[error("refinement level {0} exceeds the maximum of 9")]
    LevelTooHigh(u32),
    #[error("solver divergence: {0}")]
    SolverDivergence(String),
    #[error("refinement sequence is not contracting: increments {0:e} then {1:e}")]
    NonContracting(f64, f64),
    #[error("point ({0}, {1}) is outside the region of `{2}`")]
    OutOfRegion(f64, f64, String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
