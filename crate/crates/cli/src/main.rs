//! `spinsqueeze`: sweeps, table reproduction, single-point evaluation and
//! self-checks for spin squeezing under decoherence.

mod commands;
mod fmt;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "spinsqueeze", version, about = "Spin squeezing of GHZ/W superpositions under decoherence")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the squeezing parameter at one parameter point.
    Point(PointArgs),
    /// Detect no-squeezing directions and write the discrepancy report.
    Table(TableArgs),
    /// Run a parameter sweep and write CSV or JSON records.
    Sweep(SweepArgs),
    /// Run the built-in invariant checks.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long)]
    pub channel: String,
    #[arg(long)]
    pub alpha: f64,
    /// Polar angle of the reference direction, degrees.
    #[arg(long)]
    pub theta: f64,
    /// Azimuthal angle of the reference direction, degrees.
    #[arg(long)]
    pub phi: f64,
    #[arg(long)]
    pub gammat: f64,
    /// `given` uses (theta, phi); `mean` uses the state's mean spin direction.
    #[arg(long, default_value = "given")]
    pub direction_mode: String,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// amplitude, phase, depolarizing, or all.
    #[arg(long)]
    pub channel: String,
    /// Report path; defaults to `discrepancy_<channel>.txt`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = spinsqueeze::sweep::DEFAULT_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub channel: String,
    /// Grid as start:stop:step or a comma list.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub gammat: Option<String>,
    #[arg(long, default_value = "given")]
    pub direction_mode: String,
    /// csv or json.
    #[arg(long, default_value = "csv")]
    pub format: String,
    /// Output path; defaults to `sweep.<format>`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate grid points on one thread.
    #[arg(long)]
    pub serial: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Print the deviation and tolerance of every check.
    #[arg(long)]
    pub verbose: bool,
    /// Substitute the positive-exponent amplitude damping set.
    #[arg(long, hide = true)]
    pub inject_positive_exponent: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Point(a) => commands::point(&a),
        Command::Table(a) => commands::table(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Check(a) => commands::check(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e.error);
            e.code
        }
    }
}
