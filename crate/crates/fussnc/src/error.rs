use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("enumeration cap exceeded: {what} needs {needed} items, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    /// An internal invariant failed; valid input should never produce this.
    #[error("consistency failure: {0}")]
    Logic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
