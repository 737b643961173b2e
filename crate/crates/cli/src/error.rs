use thiserror::Error;

/// Input and usage errors. All map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Core(#[from] qlin_core::Error),
}
