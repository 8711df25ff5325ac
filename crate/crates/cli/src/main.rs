use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use optomech_cli::config::{check_constants, parse_config_with_kind};
use optomech_cli::{run, CliError, ExperimentKind};

/// Runs an optomechanical single-phonon experiment and writes a CSV.
#[derive(Debug, Parser)]
#[command(name = "simulate", version)]
struct Args {
    /// TOML config file.
    config: PathBuf,
    /// Output directory (overrides `[output] directory`).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads for grid points.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,
    /// Experiment kind (overrides `[experiment] kind`).
    #[arg(long, value_enum)]
    experiment: Option<ExperimentKind>,
}

fn execute(args: &Args) -> Result<PathBuf, CliError> {
    check_constants(std::env::var("PHONON_CONSTANTS").ok().as_deref())?;
    let text = std::fs::read_to_string(&args.config).map_err(|e| CliError::ConfigRead {
        path: args.config.clone(),
        source: e,
    })?;
    let mut cfg = parse_config_with_kind(&text, args.experiment)?;
    if let Some(dir) = &args.out {
        cfg.output_dir = dir.clone();
    }
    if let Some(n) = args.threads {
        cfg.threads = n as usize;
    }
    run(&cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(path) => {
            println!("{}", path.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
