use thiserror::Error;

/// Errors shared by every crate in the workspace.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HspError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("capacity exceeded: {what} needs {size} elements, cap is {cap}")]
    Capacity { what: String, size: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("oracle inconsistent: {0}")]
    Inconsistent(String),
    #[error("failure: {0}")]
    Failure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, HspError>;
