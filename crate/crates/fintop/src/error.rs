use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("not a topology: {0}")]
    NotATopology(String),
    #[error("carrier mismatch: {left} vs {right} points")]
    CarrierMismatch { left: usize, right: usize },
    #[error("carrier of {n} points exceeds the supported maximum of {max}")]
    CarrierTooLarge { n: usize, max: usize },
    #[error("point {point} out of range for a space on {n} points")]
    PointOutOfRange { point: usize, n: usize },
    #[error("map is not surjective")]
    NotSurjective,
    #[error("{{b}} is not closed in the second factor")]
    BNotClosed,
    #[error("accumulation point is isolated in the trace; not a prime subspace")]
    NotPrimeSubspace,
    #[error("expected {expected} parts (one per isolated point), got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("construction too large: {0}")]
    TooLarge(String),
    #[error("bad size for generator: {0}")]
    BadSize(String),
    #[error("family member does not satisfy the ambient predicate")]
    MemberOutsideA,
    #[error("point bound {bound} smaller than a seed with {seed} points")]
    BoundTooSmall { bound: usize, seed: usize },
    #[error("closure is not saturated")]
    NotSaturated,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("witness invalid: {0}")]
    WitnessInvalid(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("unsupported map: {0}")]
    UnsupportedMap(String),
    #[error("syntax error at line {line}, column {col}: expected {expected}")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
    },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
