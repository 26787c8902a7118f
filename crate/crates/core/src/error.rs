use thiserror::Error;

use crate::parse::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("interval endpoint {0} is a root of the polynomial")]
    EndpointIsRoot(String),
    #[error("ambiguous root: {count} roots of {poly} in [{lo}, {hi}]")]
    AmbiguousRoot {
        poly: String,
        lo: String,
        hi: String,
        count: usize,
    },
    #[error("negative radicand {0}")]
    NegativeRadicand(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// CLI exit status for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 1,
            Error::ResourceLimit(_) => 2,
            Error::Internal(_) => 3,
            // precondition failures from library calls are input errors
            _ => 1,
        }
    }
}
