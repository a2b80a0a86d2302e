//! Front end for `cms-core`: file formats, JSON reports and the commands
//! behind the `cms` binary.

pub mod check;
pub mod commands;
pub mod format;
pub mod report;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bad parameter: {0}")]
    Param(String),
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] cms_core::Error),
}

impl CliError {
    /// 1 for verification failures, 2 for bad input, 3 for an exhausted
    /// search budget.
    pub fn exit_code(&self) -> i32 {
        use cms_core::Error as E;
        match self {
            CliError::Verify(_) => 1,
            CliError::Parse(_) | CliError::Param(_) | CliError::Io { .. } => 2,
            CliError::Core(E::BudgetExceeded { .. } | E::SearchCapExceeded(_)) => 3,
            CliError::Core(
                E::PreconditionViolated(_)
                | E::TooSmall(..)
                | E::NotTwoRegular
                | E::VertexOutOfRange { .. }
                | E::LoopEdge(..)
                | E::DuplicateEdge(..),
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

pub fn read_file(path: &str) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}

pub fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_string(),
        source,
    })
}
