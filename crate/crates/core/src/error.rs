use thiserror::Error;

/// Errors raised by the simulation, tomography and experiment layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The truncated Fock space cannot represent the requested state.
    #[error("truncation error: {message} (required n_max >= {required})")]
    Truncation { message: String, required: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A state or tomogram violates a normalization or positivity invariant.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Every problem found while validating a configuration document.
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
