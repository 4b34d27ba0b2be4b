use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Bad arguments: wrong context, index out of range, invalid parameters.
    #[error("usage error: {0}")]
    Usage(String),

    /// The inputs are well formed but fall outside the hypotheses of the
    /// requested computation (e.g. a non-p-regular group for a decision).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code for this error class (2 usage/domain, 3 verification).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Domain(_) | Error::Unsupported(_) => 2,
            Error::Verification(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
