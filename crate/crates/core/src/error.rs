use thiserror::Error;

/// Errors raised by the algebra engine and the session front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal `{0}`")]
    InvalidNumber(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("no leading term")]
    NoLeadingTerm,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix does not define a morphism: {0}")]
    NotWellDefined(String),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("oracle is univariate-only")]
    UnivariateOnly,
    #[error("{0}")]
    Usage(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
