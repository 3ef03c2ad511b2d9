use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} did not converge within {limit} steps")]
    NonConvergence { what: &'static str, limit: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("states have different spectrum parameters")]
    ParameterMismatch,

    #[error("Mandel parameter is undefined at J = 0")]
    UndefinedAtZero,

    #[error("phase grouping requires an integer mu, got {0}")]
    NonIntegerMu(f64),
}

impl Error {
    /// True for failures of a numerical method rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. } | Error::Degenerate(_))
    }
}
