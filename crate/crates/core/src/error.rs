use thiserror::Error;

use crate::parser::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial has infinite content")]
    ZeroPolynomial,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("prime {p} exceeds the exhaustive-search bound {limit}")]
    PrimeTooLarge { p: String, limit: u64 },

    #[error("not a root: P({r}) is not divisible by {p}")]
    NotARoot { r: String, p: u64 },

    #[error("unnormalized input: every coefficient is divisible by {p}")]
    Unnormalized { p: u64 },

    #[error("not a simple root: {0}")]
    NotSimpleRoot(String),

    #[error("insufficient depth: branch at level {level} is undetermined and level {needed} was requested")]
    InsufficientDepth { level: u32, needed: u32 },

    #[error("enumeration too large: {size} residues exceed the budget of {budget}")]
    EnumerationTooLarge { size: String, budget: u64 },

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not quadratic: degree is {0}")]
    NotQuadratic(String),

    #[error("p must be odd")]
    EvenPrime,

    #[error("p divides leading coefficient")]
    LeadingCoefficientDivisible,

    #[error(
        "classification mismatch: discriminant gives {closed_form}, trunk shape gives {trunk}"
    )]
    ClassificationMismatch { closed_form: String, trunk: String },

    #[error(transparent)]
    Parse(#[from] ParseError),
}
