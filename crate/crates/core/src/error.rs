use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("speed set must not be empty")]
    EmptySpeedSet,
    #[error("invalid speed {0}")]
    InvalidSpeed(u64),
    #[error("duplicate speed {0}")]
    DuplicateSpeed(i128),
    #[error("need at least {needed} runners, got {got}")]
    TooFewRunners { needed: usize, got: usize },
    #[error("focus index {focus} out of range for {len} runners")]
    FocusOutOfRange { focus: usize, len: usize },
    #[error("grid resolution {resolution} below 2·max speed = {min}")]
    ResolutionTooSmall { resolution: u64, min: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {p} divides speed {speed}")]
    PrimeDividesSpeed { p: u64, speed: u64 },
    #[error("band radius {m} must satisfy 2m < p = {p}")]
    BandTooWide { m: u64, p: u64 },
    #[error("residue {residue} outside 1..{p}")]
    ResidueOutOfRange { residue: u64, p: u64 },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("prime budget {budget} exhausted before a certificate was found")]
    BudgetExhausted { budget: u64 },
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("slope {0} outside the open wedge (0, sqrt3)")]
    SlopeOutsideWedge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}
