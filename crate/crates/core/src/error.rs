use thiserror::Error;

/// Errors raised by the library and surfaced by the CLI as exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// Input could not be parsed (bad JSON, malformed rational, wrong shape).
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Input parsed but violates a structural invariant (metric axioms,
    /// Lipschitz bound, Katetov inequality, convexity, ...).
    #[error("invariant violated at {location}: {message}")]
    Invariant { location: String, message: String },

    /// The hypothesis of a theorem check is not met by the input
    /// (e.g. a non-invariant metric where invariance is required).
    #[error("hypothesis unmet: {0}")]
    Hypothesis(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn invariant(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Invariant {
            location: location.into(),
            message: message.into(),
        }
    }

    pub fn hypothesis(message: impl Into<String>) -> Self {
        Error::Hypothesis(message.into())
    }

    /// Process exit code used by the CLI for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant { .. } => 1,
            Error::Parse { .. } | Error::Io(_) => 2,
            Error::Hypothesis(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
