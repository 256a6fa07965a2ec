use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("unsupported arity {0}")]
    UnsupportedArity(usize),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("monomial {0} is not in canonical form")]
    NotCanonical(String),

    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(usize, usize),

    #[error("basis rows are linearly dependent")]
    DependentRows,

    #[error("zero row in basis")]
    ZeroRow,

    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
