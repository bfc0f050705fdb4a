use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("denominator factor 1 - {0} has non-positive grading; geometric expansion diverges")]
    NonConvergentFactor(String),
    #[error("denominator factor 1 - {0} is identically zero")]
    ZeroFactor(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("block {index} has non-zero trace {trace}")]
    NonTraceless { index: usize, trace: String },
    #[error("work estimate {work} exceeds guard {guard} ({what})")]
    TooLarge { what: &'static str, work: String, guard: String },
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("oracle precision p^{precision} exceeds guard {guard}")]
    PrecisionOverflow { precision: u32, guard: String },
    #[error("lattice point {0:?} lies outside the integrality cone")]
    OutsideIntegralCone([i64; 3]),
    #[error("generators are linearly dependent")]
    DegenerateGenerators,
    #[error("cone is not simple: its fundamental domain holds {0} lattice points")]
    NotSimple(usize),
    #[error("an odd prime is required here, got p = {0}")]
    OddPrimeRequired(u64),
    #[error("no monomial functional-equation factor found")]
    NoFunctionalEquation,
}

pub type Result<T> = std::result::Result<T, Error>;
