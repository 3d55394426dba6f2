use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A value or result exceeds the supported integer range or an enumeration budget.
    #[error("range error: {0}")]
    Range(String),
    /// The caller violated a stated precondition (e.g. `p` does not divide `ab`).
    #[error("precondition error: {0}")]
    Precondition(String),
    /// The request would exceed a memory budget.
    #[error("resource error: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
