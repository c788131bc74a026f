use thiserror::Error;

/// Errors raised by the library. Every variant maps to a validation or
/// resource problem; numerical routines themselves are total.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A family or relation parameter violates its constraints.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The relation and the model describe different structures.
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    /// The requested work exceeds the configured draw cap.
    #[error("resource limit exceeded: {requested} draws requested, cap is {cap}")]
    Resource { requested: u128, cap: u64 },

    #[error("empty sample: {0}")]
    EmptySample(&'static str),

    /// The check is not defined for this parameter combination.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_open_unit(u: f64) -> Result<()> {
    if u > 0.0 && u < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("u = {u} is not in (0,1)")))
    }
}
