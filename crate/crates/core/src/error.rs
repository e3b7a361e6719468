use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid signed permutation notation `{text}`: {reason}")]
    Notation { text: String, reason: String },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid Gauss code: {0}")]
    GaussCode(String),

    #[error("chain is not a cycle in the requested complex")]
    NotACycle,

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
