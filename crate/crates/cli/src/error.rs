use std::fmt::Display;

/// Failures mapped to process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or invalid input (exit code 2).
    #[error("input error: {0:#}")]
    Input(anyhow::Error),
    /// Failure while running a valid request (exit code 3).
    #[error("runtime error: {0:#}")]
    Runtime(anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Input(_) => 2,
            Self::Runtime(_) => 3,
        }
    }
}

pub trait Classify<T> {
    fn input(self) -> Result<T, CliError>;
    fn runtime(self) -> Result<T, CliError>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn input(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Input(e.into()))
    }

    fn runtime(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Runtime(e.into()))
    }
}

pub fn input_error(msg: impl Display) -> CliError {
    CliError::Input(anyhow::anyhow!("{msg}"))
}
