//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A model or grid parameter violates its constraint.
    #[error("parameter `{name}` = {value} violates: {constraint}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A precondition on the state of the computation failed.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
