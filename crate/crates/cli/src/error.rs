use std::process::ExitCode;

use ac_spectra::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("rejected: {0}")]
    Regime(CoreError),

    #[error("numerical failure: {0}")]
    Numerical(CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) | CliError::Config(_) | CliError::Io(_) => ExitCode::from(1),
            CliError::Regime(_) => ExitCode::from(2),
            CliError::Numerical(_) => ExitCode::from(3),
        }
    }
}

/// Bound-state regime violations and degenerate couplings are rejections;
/// bad arguments are configuration errors; everything else is numerical.
pub fn classify(err: CoreError) -> CliError {
    match err {
        CoreError::Regime(_) | CoreError::Boundary { .. } | CoreError::Degenerate(_) => CliError::Regime(err),
        CoreError::Domain(msg) => CliError::Config(msg),
        _ => CliError::Numerical(err),
    }
}

impl From<CoreError> for CliError {
    fn from(err: CoreError) -> Self {
        classify(err)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
