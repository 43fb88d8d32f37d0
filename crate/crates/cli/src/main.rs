//! `ac-spectra`: spectra, wavefunctions, limits, sweeps and oracle checks
//! from the command line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod error;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::Format;
use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "ac-spectra",
    version,
    about = "Bound-state spectra of a neutral particle with a magnetic moment around a charged filament"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Override one configuration key; the value is parsed as TOML.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    set: Vec<String>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the table here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Bound applied to every check in `verify`.
    #[arg(long, global = true, value_name = "REAL")]
    tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
enum Command {
    /// Energy levels per channel.
    Spectrum,
    /// Radial wavefunction of one level on a log-spaced grid.
    Wavefunction,
    /// Convergence toward the r0 -> 0 lattices and the omega -> 0 energy.
    Limits,
    /// Compare primary results with independent oracles.
    Verify,
    /// Spectrum rows over a range of eta, r0, alpha or omega.
    Sweep,
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    let mut cfg = config::load(cli.config.as_deref(), &cli.set)?;
    if let Some(format) = cli.format {
        cfg.format = format;
    }
    if let Some(out) = &cli.out {
        cfg.out = Some(out.clone());
    }
    if let Some(tol) = cli.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be finite and > 0, got {tol}")));
        }
        cfg.tol = Some(tol);
    }
    let outcome = match cli.command {
        Command::Spectrum => commands::spectrum(&cfg),
        Command::Wavefunction => commands::wavefunction(&cfg),
        Command::Limits => commands::limits(&cfg),
        Command::Verify => commands::verify(&cfg),
        Command::Sweep => commands::sweep(&cfg),
    }?;
    let text = match cfg.format {
        Format::Csv => outcome.table.to_csv().map_err(|e| CliError::Io(std::io::Error::other(e)))?,
        Format::Json => outcome.table.to_json(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    for line in &outcome.diagnostics {
        eprintln!("ac-spectra: {line}");
    }
    Ok(outcome.status.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ac-spectra: {e}");
            e.exit_code()
        }
    }
}
