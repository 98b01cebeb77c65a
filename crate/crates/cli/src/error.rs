use thiserror::Error;

/// Errors surfaced by the command line, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed documents, failed validation and violated preconditions.
    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] cuntz_core::error::Error),

    /// Failures that are not the input's fault, such as an unwritable output.
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    /// `2` for validation and contract errors, `1` for internal ones.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Core(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
