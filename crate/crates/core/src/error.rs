use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported parameters: {0}")]
    UnsupportedParameters(String),

    /// An exhaustive enumeration would exceed the configured cap.
    #[error("refused: {what} needs {required} items, enumeration cap is {cap}")]
    CapExceeded {
        what: String,
        required: String,
        cap: u64,
    },

    #[error("brute-force oracle refused: length {n} exceeds oracle limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// A construction produced a code that did not pass its own validation.
    #[error("construction failed validation: {0}")]
    ConstructionInvalid(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::UnsupportedParameters(msg.into())
    }
}
