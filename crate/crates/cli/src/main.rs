//! `spinvol`: exact 6j symbols, identity checks, caustic screens and volume
//! spectra from the command line.

mod cmd;
mod error;
mod output;
mod spins;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use error::CliError;

#[derive(Parser)]
#[command(name = "spinvol", version, about = "Spin networks, 6j symbols and the quantum tetrahedron")]
struct Cli {
    /// Worker threads for grids and suites (default: all cores).
    #[arg(long, global = true, env = "SPINVOL_THREADS")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a 6j symbol exactly, or sweep one entry.
    Sixj(cmd::sixj::Args),
    /// Check the 6j sum rules exactly.
    Verify(cmd::verify::Args),
    /// Sample V² over the screens and extract caustics and ridges.
    Caustics(cmd::caustics::Args),
    /// Spectrum, potentials and eigenfunctions of the volume operator.
    Volume(cmd::volume::Args),
    /// Fano-plane incidence of the seven-spin network.
    Fano(cmd::fano::Args),
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Sixj(a) => cmd::sixj::run(a),
        Command::Verify(a) => cmd::verify::run(a),
        Command::Caustics(a) => cmd::caustics::run(a),
        Command::Volume(a) => cmd::volume::run(a),
        Command::Fano(a) => cmd::fano::run(a),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
