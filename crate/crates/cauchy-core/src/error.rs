//! Crate-wide error type.

#[derive(thiserror::Error, Debug)]
pub enum Error {
    /// Malformed or unsupported weight / potential / config data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A request outside an operation's domain (divergent integral, point on
    /// a cut, odd Pfaffian size, and so on).
    #[error("domain error: {0}")]
    Domain(String),
    /// Not enough precomputed data (table too small, missing window).
    #[error("insufficient data: {0}")]
    Insufficient(String),
    /// Iteration budget exhausted without meeting the tolerance.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn insufficient(msg: impl Into<String>) -> Self {
        Error::Insufficient(msg.into())
    }
}
