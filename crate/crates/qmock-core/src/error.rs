use alloc::boxed::Box;
use alloc::string::String;

/// Failures raised by evaluators and identity checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("argument outside the annulus of convergence: {0}")]
    AnnulusViolation(String),
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("{which} assignment: {inner}")]
    InAssignment { which: &'static str, inner: Box<Error> },
}

impl Error {
    /// The error with assignment tags stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::InAssignment { inner, .. } => inner.root(),
            e => e,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self.root(), Error::Pole(_))
    }

    pub fn is_usage(&self) -> bool {
        matches!(self.root(), Error::Usage(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
