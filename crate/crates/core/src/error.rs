use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    BadPrime(u64),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("level {requested} exceeds stored level {stored}")]
    LevelExceeded { requested: u32, stored: u32 },
    #[error("measure is not bounded on stored levels")]
    Unbounded,
    #[error("supersingular prime: a_p = 0")]
    Supersingular,
    #[error("Hecke polynomial has non-integral slope")]
    NonIntegralSlope,
    #[error("not ordinary: {0}")]
    NotOrdinary(String),
    #[error("eigenspace has dimension {0}, expected 1")]
    NotOneDimensional(usize),
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("degree {degree} exceeds maximum {max}")]
    DegreeOverflow { degree: usize, max: usize },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("provider failure: {0}")]
    Provider(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
