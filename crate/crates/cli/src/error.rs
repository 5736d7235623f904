use thiserror::Error;

/// Failures surfaced by the command-line front end, each with a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// `location` is a path into the document such as `C[0][1][2]`, or `line:col` for syntax errors.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation failed: {0}")]
    Validation(#[from] curvlab_core::Error),

    #[error("{0}")]
    Property(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => 2,
            CliError::Validation(curvlab_core::Error::Usage(_)) => 2,
            CliError::Validation(_) | CliError::Property(_) => 1,
        }
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse { location: location.into(), message: message.into() }
    }
}
