use thiserror::Error;

/// Errors produced by the bound, norm and search routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments fall outside the range where the formula or inequality applies.
    #[error("domain error: {0}")]
    Domain(String),
    /// The formula is formally in range but degenerates (e.g. a vanishing denominator).
    #[error("degenerate domain: {0}")]
    DegenerateDomain(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("no closed-form norm for {family} at p = {p}")]
    NoClosedForm { family: String, p: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("cannot parse exponent {0:?}")]
    ParseExponent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
