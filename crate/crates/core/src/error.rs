use thiserror::Error;

/// Errors raised by the library. Variants map onto CLI exit codes:
/// [`Error::InvariantBreach`] is an internal failure (exit 2), everything
/// else is a parse or domain error (exit 1).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(String),

    #[error("valuation of zero is undefined")]
    ZeroValuation,

    #[error("{0} is a perfect square; use the rational path instead")]
    RationalSquare(String),

    #[error("sqrt({disc}) does not lie in Q_{prime}")]
    NoLadicRoot { disc: String, prime: String },

    #[error("invalid branch {branch} for sqrt({disc}) in Q_{prime}; valid branches: {valid}")]
    InvalidBranch {
        branch: String,
        disc: String,
        prime: String,
        valid: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant breach: {0}")]
    InvariantBreach(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvariantBreach(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
