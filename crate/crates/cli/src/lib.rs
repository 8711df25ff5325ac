//! Config-driven runner for the optomechanical single-phonon protocol.
//!
//! A run reads a TOML file, resolves defaults, computes one experiment and
//! writes `<kind>_<hash>.csv` into the output directory.

pub mod config;
pub mod error;
pub mod experiment;
pub mod output;

use std::path::PathBuf;

pub use config::{load_config, parse_config, ExperimentKind, Grids, RunConfig};
pub use error::CliError;
pub use experiment::{run_experiment, Table};

/// Runs `cfg` and returns the path of the written CSV.
pub fn run(cfg: &RunConfig) -> Result<PathBuf, CliError> {
    let table = run_experiment(cfg)?;
    let path = output::output_path(cfg);
    output::write_atomic(&path, cfg, &table)?;
    Ok(path)
}
