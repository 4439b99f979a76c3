use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid fuzzy number: {0}")]
    Validity(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("infeasible rung: {0}")]
    Infeasible(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{location}: {message}")]
    Semantic { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for failures that arise while computing rather than while
    /// reading or validating input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::DivisionByZero(_))
    }

    /// Prefixes the message, keeping the variant.
    pub fn context(self, prefix: &str) -> Self {
        match self {
            Error::Validity(m) => Error::Validity(format!("{prefix}: {m}")),
            Error::Domain(m) => Error::Domain(format!("{prefix}: {m}")),
            Error::Shape(m) => Error::Shape(format!("{prefix}: {m}")),
            Error::Parameter(m) => Error::Parameter(format!("{prefix}: {m}")),
            Error::Infeasible(m) => Error::Infeasible(format!("{prefix}: {m}")),
            Error::DivisionByZero(m) => Error::DivisionByZero(format!("{prefix}: {m}")),
            Error::Syntax(m) => Error::Syntax(format!("{prefix}: {m}")),
            Error::Semantic { location, message } => {
                Error::Semantic { location: format!("{prefix}, {location}"), message }
            }
        }
    }

    pub(crate) fn at(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Semantic { location: location.into(), message: message.into() }
    }
}
