use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {}: {source}", path.display())]
    ConfigRead {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    ConfigParse(String),

    #[error("invalid config:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    #[error(transparent)]
    Physics(#[from] optomech::Error),

    #[error("output error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    /// Process exit status: 2 for bad input, 3 for an unstable working
    /// point, 4 for a failed overlap self-check, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use optomech::Error as E;
        match self {
            CliError::ConfigRead { .. } | CliError::ConfigParse(_) | CliError::Validation(_) => 2,
            CliError::Physics(E::InvalidParameters(_) | E::NegativeTime(_) | E::EmptyGrid) => 2,
            CliError::Physics(E::Unstable { .. }) => 3,
            CliError::Physics(E::QuadratureDisagreement { .. }) => 4,
            _ => 1,
        }
    }
}
