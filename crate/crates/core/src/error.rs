use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero in number field")]
    ZeroInverse,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("invalid number field: {0}")]
    BadField(String),
    #[error("zero-rank lattice cannot be saturated")]
    ZeroRank,
    #[error("non-reduced curve: {0}")]
    NonReduced(String),
    #[error("line at infinity not transversal: {0}")]
    NotTransversal(String),
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("h2 obstruction; unsupported twist n = {0}")]
    UnsupportedTwist(i64),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema { path: path.into(), msg: msg.into() }
    }

    /// Unsupported inputs are distinguished from plain validation failures
    /// (the CLI maps them to different exit codes).
    pub fn is_unsupported(&self) -> bool {
        matches!(self, Error::Unsupported(_) | Error::NotTransversal(_) | Error::UnsupportedTwist(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
