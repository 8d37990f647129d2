use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum HeckeError {
    /// Input violates a documented precondition.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Two independent computations disagreed.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, HeckeError>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(HeckeError::Parameter(msg.into()))
}
