use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] icsie::Error),
    #[error("cannot read {}: {source}", path.display())]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {}: {source}", path.display())]
    Write { path: PathBuf, source: std::io::Error },
    /// Malformed command-line values or scenario files.
    #[error("{0}")]
    Input(String),
    /// A check the command was asked to perform failed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(icsie::Error::Parse(_)) => 2,
            CliError::Core(icsie::Error::BudgetExceeded { .. }) => 3,
            CliError::Core(_) | CliError::Failed(_) | CliError::Write { .. } => 1,
            CliError::Read { .. } | CliError::Input(_) => 2,
        }
    }
}

impl From<icsie::ParseError> for CliError {
    fn from(e: icsie::ParseError) -> Self {
        CliError::Core(e.into())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
