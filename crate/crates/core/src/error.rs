use thiserror::Error;

/// Errors shared by every module. Each variant maps onto one CLI exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A family, basis or potential parameter violates its invariants.
    #[error("parameter out of domain: {0}")]
    ParameterDomain(String),
    /// An argument (coordinate, energy, index) is outside the operation's domain.
    #[error("argument out of domain: {0}")]
    Domain(String),
    /// The requested combination has no supported closed form.
    #[error("unsupported case: {0}")]
    Unsupported(String),
    /// A numerical procedure could not reach the requested tolerance.
    #[error("accuracy target not met for {what}: estimated error {achieved:e} > {requested:e}")]
    Accuracy {
        what: String,
        achieved: f64,
        requested: f64,
    },
    /// Structural matrix failure (not positive definite, non-symmetric, ...).
    #[error("matrix error: {0}")]
    Matrix(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::ParameterDomain(msg.into()))
}

pub(crate) fn finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        param(format!("{name} must be finite (got {v})"))
    }
}
