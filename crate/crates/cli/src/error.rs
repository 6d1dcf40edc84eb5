use std::path::PathBuf;

use thiserror::Error;

/// Everything a subcommand can fail with. The variant decides the exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, inconsistent configuration, or a config file that does
    /// not parse.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{0}")]
    Runtime(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub const EXIT_CONFIG: i32 = 2;
    pub const EXIT_RUNTIME: i32 = 3;

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => Self::EXIT_CONFIG,
            CliError::Runtime(_) | CliError::Io { .. } => Self::EXIT_RUNTIME,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<winding::Error> for CliError {
    fn from(e: winding::Error) -> Self {
        use winding::Error as E;
        match e {
            E::InvalidParameter(_) | E::NormalizerUndefined { .. } => {
                CliError::Config(e.to_string())
            }
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
