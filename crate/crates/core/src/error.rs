use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("operation needs odd characteristic")]
    EvenCharacteristic,
    #[error("element is not a square")]
    NoRoot,
    #[error("element index {0} out of range")]
    ElementOutOfRange(u64),

    #[error("gcd of two zero polynomials")]
    BothZero,
    #[error("polynomial has zero derivative (inseparable)")]
    InseparableInput,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,

    #[error("points are equal")]
    EqualPoints,
    #[error("all homogeneous coordinates are zero")]
    ZeroTriple,

    #[error("no admissible prime r for m={m}, p={p}: {reasons}")]
    NoAdmissiblePrime { m: usize, p: u64, reasons: String },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("point is singular")]
    SingularPoint,
    #[error("line is a component of the curve")]
    LineIsComponent,
    #[error("point lies on the curve")]
    PointOnCurve,
    #[error("no double-root witness found (m={m})")]
    NoWitness { m: usize },
    #[error("construction hypothesis failed: {0}")]
    HypothesisFailure(String),

    #[error("input is not an m-arc: line {line} carries {count} points")]
    ArcViolation { line: String, count: usize },
    #[error("point already belongs to the arc")]
    PointInArc,

    #[error("no totally split slope")]
    NotFound,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
