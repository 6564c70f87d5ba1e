use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("variable index {index} out of range for a ring with {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("minor size {size} out of range 1..={max}")]
    MinorSizeOutOfRange { size: usize, max: usize },
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("{0} is not supported over a quotient ring; lift to the ambient ring first")]
    QuotientUnsupported(&'static str),
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("the defining ideal is the unit ideal (empty spectrum)")]
    UnitIdeal,
    #[error("the ideal must be proper")]
    NotProper,
    #[error("normalization is not module-finite: variable `{0}` has no pure-power leading term")]
    NotFinite(String),
    #[error("normalization has {given} parameters but the ring has dimension {dim}")]
    DimensionMismatch { given: usize, dim: String },
    #[error("{0} requires homogeneous input")]
    NotHomogeneous(&'static str),
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("probe degree {given} is below the bound {bound}")]
    ProbeDegree { given: usize, bound: usize },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
