//! `hyperslice`: compute measures and sections of convex bodies and verify
//! slicing inequalities from a JSON configuration.

mod commands;
mod config;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::{Options, Output};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, EXIT_OK, EXIT_VERIFICATION_FAILED};

#[derive(Parser)]
#[command(name = "hyperslice", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file; overrides `output_path`. Standard output if neither is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Overrides `format` from the configuration.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Overrides `seed` from the configuration.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Add Monte Carlo oracle columns to `measure` and `section`.
    #[arg(long, global = true)]
    mc: bool,
}

#[derive(Clone, Copy, Subcommand)]
enum Command {
    /// μ(K) and Vol(K) for every body and density.
    Measure,
    /// μ(K ∩ ξ⊥) for every body, density and configured direction.
    Section,
    /// Largest section measure found over directions.
    MaxSection,
    VerifyHyperplane,
    VerifyStability,
    VerifyDifference,
    VerifyVolumeStability,
    /// Gamma-function lemmas and random instances of the monotonicity lemma.
    Lemmas,
    /// Every configured inequality over bodies × densities × dimensions.
    Sweep,
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let mut config = RunConfig::load(path)?;
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    let options = Options {
        format: cli.format.unwrap_or(config.format),
        mc: cli.mc,
    };
    let output = match cli.command {
        Command::Measure => commands::measure(&config, options),
        Command::Section => commands::section(&config, options),
        Command::MaxSection => commands::max_section(&config, options),
        Command::VerifyHyperplane => commands::verify_hyperplane(&config, options),
        Command::VerifyStability => commands::verify_stability(&config, options),
        Command::VerifyDifference => commands::verify_difference(&config, options),
        Command::VerifyVolumeStability => commands::verify_volume_stability(&config, options),
        Command::Lemmas => commands::lemmas(&config, options),
        Command::Sweep => commands::sweep(&config, options),
    }?;
    match cli.out.clone().or_else(|| config.output_path.as_ref().map(PathBuf::from)) {
        Some(out) => std::fs::write(out, &output.bytes)?,
        None => std::io::stdout().lock().write_all(&output.bytes)?,
    }
    Ok(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(output) if output.all_passed => EXIT_OK,
        Ok(_) => {
            eprintln!("hyperslice: at least one inequality failed verification");
            EXIT_VERIFICATION_FAILED
        }
        Err(e) => {
            eprintln!("hyperslice: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
