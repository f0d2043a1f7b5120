use std::path::PathBuf;

use hypspec::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("invalid value for --{field}: {message}")]
    Config { field: &'static str, message: String },

    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot serialize output: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(field: &'static str, message: impl Into<String>) -> Self {
        CliError::Config { field, message: message.into() }
    }

    /// 1 for invalid configuration or data, 2 for missing or incomplete
    /// input, 3 for numerical failures.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } | CliError::Json(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::IncompleteSpectrum { .. } | CoreError::Io(_) => 2,
                CoreError::QuadratureFailure(_) | CoreError::ConvergenceFailure(_) | CoreError::NotHyperbolic(_) => 3,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
