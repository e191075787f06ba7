use thiserror::Error;

/// Errors produced by the counting and enumeration layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("degree {degree} exceeds table maximum {max}")]
    DegreeExceedsTable { degree: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A computation would exceed a configured memory or enumeration budget.
    #[error("resource budget exceeded: {what} needs {needed}, budget is {budget}")]
    Resource {
        what: &'static str,
        needed: String,
        budget: String,
    },

    #[error("comparison against log 2 could not be decided at available precision")]
    Undecidable,
}

impl Error {
    pub(crate) fn resource(what: &'static str, needed: impl ToString, budget: impl ToString) -> Self {
        Error::Resource {
            what,
            needed: needed.to_string(),
            budget: budget.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
