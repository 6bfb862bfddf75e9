use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("singular point: {what} evaluated at its center")]
    Singular { what: String },
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("{what} did not converge (best value {best:e}, error estimate {estimate:e})")]
    Convergence {
        what: String,
        best: f64,
        estimate: f64,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("usage: {0}")]
    Usage(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
