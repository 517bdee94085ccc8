//! Command-line front end: `rates`, `evolve`, `qfi`, `scan`, `figure`,
//! `multiparam`, and `selftest` subcommands over the library, emitting CSV.

mod commands;
mod config;
mod csv;

pub use commands::{
    cmd_evolve, cmd_figure, cmd_multiparam, cmd_qfi, cmd_rates, cmd_scan, CommandOutput,
};
pub use config::{parse_number, RunConfig};
pub use csv::{format_float, CsvTable, CsvValue};

use crate::error::Result;
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "thermoprobe",
    version,
    about = "Quantum thermometry with a uniformly moving two-level probe",
    long_about = "Computes relaxation rates, reduced dynamics, and Fisher information for a \
two-level probe moving through a thermal scalar field. All quantities use scaled units \
(c = hbar = k_B = 1). Parameters are given as trailing key=value arguments or a --config file; \
command-line values win."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bath-response rates: gamma0, N, dN/dT, Lamb shift.
    Rates(CommonArgs),
    /// Closed-form reduced state and Bloch vector over time.
    Evolve(CommonArgs),
    /// Temperature QFI (three routes) and the sigma_z Fisher information.
    Qfi(CommonArgs),
    /// Free-form 1- or 2-axis parameter sweep (axis=key:min:max:count[:lin|log]).
    Scan(CommonArgs),
    /// Run a named figure preset (`preset=<id>`).
    Figure(FigureArgs),
    /// Two-parameter (T, theta) estimation: Fisher matrix, variances, R.
    Multiparam(CommonArgs),
    /// Run the acceptance suite and print one pass/fail line per criterion.
    Selftest,
}

#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Probe-field coupling: udw or td.
    #[arg(long)]
    pub coupling: Option<String>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Plain key = value config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Parameter overrides.
    #[arg(value_name = "KEY=VALUE")]
    pub overrides: Vec<String>,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    /// Preset id (e.g. fig1a); `preset=<id>` works too.
    #[arg(long)]
    pub preset: Option<String>,
    #[command(flatten)]
    pub common: CommonArgs,
}

fn build_config(common: &CommonArgs) -> Result<RunConfig> {
    let mut config = match &common.config {
        Some(path) => RunConfig::from_file(path)?,
        None => RunConfig::new(),
    };
    if let Some(c) = &common.coupling {
        config.set("coupling", c)?;
    }
    config.apply_overrides(&common.overrides)?;
    Ok(config)
}

fn emit(common: &CommonArgs, output: &CommandOutput) -> Result<()> {
    match &common.out {
        Some(path) => output.table.write_to(path)?,
        None => print!("{}", output.table.render()),
    }
    Ok(())
}

/// Execute a parsed command line; returns the process exit code
/// (0 success, 1 error, 3 completed with flagged rows).
pub fn run(cli: &Cli) -> i32 {
    eprintln!("thermoprobe: scaled units, c = hbar = k_B = 1 (all quantities dimensionless)");
    let outcome = match &cli.command {
        Command::Rates(args) => dispatch(args, cmd_rates),
        Command::Evolve(args) => dispatch(args, cmd_evolve),
        Command::Qfi(args) => dispatch(args, cmd_qfi),
        Command::Scan(args) => dispatch(args, cmd_scan),
        Command::Multiparam(args) => dispatch(args, cmd_multiparam),
        Command::Figure(args) => build_config(&args.common).and_then(|mut config| {
            if let Some(p) = &args.preset {
                config.set("preset", p)?;
            }
            let out = cmd_figure(&config)?;
            emit(&args.common, &out)?;
            Ok(out.flagged_rows)
        }),
        Command::Selftest => {
            let outcomes = crate::selftest::run_all();
            let mut failed = 0;
            for o in &outcomes {
                println!(
                    "{} [{}] {} ({:.1} s) {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.id,
                    o.description,
                    o.seconds,
                    o.details
                );
                if !o.passed {
                    failed += 1;
                }
            }
            println!(
                "{} of {} acceptance criteria passed",
                outcomes.len() - failed,
                outcomes.len()
            );
            return if failed == 0 { 0 } else { 1 };
        }
    };
    match outcome {
        Ok(0) => 0,
        Ok(_) => 3,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(args: &CommonArgs, f: impl Fn(&RunConfig) -> Result<CommandOutput>) -> Result<usize> {
    let config = build_config(args)?;
    let out = f(&config)?;
    emit(args, &out)?;
    Ok(out.flagged_rows)
}
