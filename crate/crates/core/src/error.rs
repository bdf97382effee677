use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("field: {0}")]
    Field(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid instance at receiver {receiver}: {reason}")]
    InvalidInstance { receiver: usize, reason: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An enumeration or search hit its configured cap; the result is not certified.
    #[error("budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded { what: &'static str, needed: u128, cap: u128 },

    #[error("too many errors: no error pattern of weight <= {delta} matches the syndrome")]
    TooManyErrors { delta: usize },

    #[error("matrix is not an index code for receiver {receiver}")]
    NotIndexCode { receiver: usize },

    #[error("condition violated: {0}")]
    ConditionViolated(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn budget(what: &'static str, needed: impl Into<u128>, cap: impl Into<u128>) -> Self {
        Error::BudgetExceeded { what, needed: needed.into(), cap: cap.into() }
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
