use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("{message} at line {line}")]
    Parse { line: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no viable extension at step {step} ({stage}-extension)")]
    NoExtension { step: usize, stage: &'static str },
}

impl Error {
    /// Stable identifier used in CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::VertexOutOfRange { .. } => "vertex-out-of-range",
            Error::Resource(_) => "resource-exceeded",
            Error::Parse { .. } => "parse-error",
            Error::Precondition(_) => "precondition-failed",
            Error::NoExtension { .. } => "no-extension",
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
