use thiserror::Error;

/// Errors raised across the crate. Each variant maps onto one CLI exit class.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("LP solver failure: {0}")]
    SolverFailure(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("H does not tile the group in the strict sense with the given translation set")]
    NotAStrictTiling,
    #[error("packing-type condition violated: {0}")]
    ConditionViolated(String),
    #[error("singular point: d(z) vanishes at z = {0}")]
    SingularPoint(f64),
    #[error("construction check failed: {0}")]
    Construction(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
