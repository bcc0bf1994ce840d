use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use spinsqueeze::channels::{self, apply_channel_all_qubits, ChannelParam};
use spinsqueeze::checks::{run_checks, CheckOptions};
use spinsqueeze::qstate::{density_from_pure, superposition_state, SuperpositionSpec};
use spinsqueeze::spin::{evaluate, Direction, DirectionMode, SpinEnsemble};
use spinsqueeze::sweep::io::{emit_results, Format};
use spinsqueeze::sweep::report::{discrepancy_report, reproduce, write_report, ReferenceClaims};
use spinsqueeze::sweep::{parse_grid, run_sweep_with, Execution, SweepSpec, N_QUBITS};

use crate::fmt::sig12;
use crate::{CheckArgs, PointArgs, SweepArgs, TableArgs};

/// An error with the process exit status it maps to.
pub struct Failure {
    pub error: anyhow::Error,
    pub code: ExitCode,
}

type Outcome = Result<ExitCode, Failure>;

const USAGE: u8 = 2;
const RUNTIME: u8 = 1;

trait OrExit<T> {
    fn usage(self) -> Result<T, Failure>;
    fn runtime(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for Result<T, E> {
    fn usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            error: e.into(),
            code: ExitCode::from(USAGE),
        })
    }

    fn runtime(self) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            error: e.into(),
            code: ExitCode::from(RUNTIME),
        })
    }
}

pub fn point(args: &PointArgs) -> Outcome {
    let channel = channels::builtin().get(&args.channel).usage()?;
    let spec = SuperpositionSpec::new(args.alpha).usage()?;
    let dir = Direction::new(args.theta, args.phi).usage()?;
    let param = ChannelParam::new(args.gammat).usage()?;
    let mode: DirectionMode = args.direction_mode.parse().usage()?;

    let ensemble = SpinEnsemble::new(N_QUBITS).runtime()?;
    let rho = density_from_pure(&superposition_state(spec)).runtime()?;
    let rho = apply_channel_all_qubits(&rho, &channel.kraus(param), N_QUBITS).runtime()?;
    let eval = evaluate(&rho, dir, mode, &ensemble).runtime()?;
    let r = eval.result;

    println!("channel        {}", channel.name());
    println!("alpha          {}", args.alpha);
    println!("theta_deg      {}", args.theta);
    println!("phi_deg        {}", args.phi);
    println!("gamma_t        {}", args.gammat);
    println!("direction_mode {mode}");
    if eval.degenerate_mean {
        println!("note           mean spin vector vanishes; using the given direction");
    }
    println!("epsilon        {}", sig12(r.epsilon));
    println!("v_min          {}", sig12(r.v_min));
    println!("phi_star_rad   {}", sig12(r.phi_star_rad));
    println!(
        "mean_spin      ({}, {}, {})",
        sig12(r.mean_spin.jx),
        sig12(r.mean_spin.jy),
        sig12(r.mean_spin.jz)
    );
    println!("squeezed       {}", if r.is_squeezed() { "yes" } else { "no" });
    Ok(ExitCode::SUCCESS)
}

pub fn table(args: &TableArgs) -> Outcome {
    if !(args.tol > 0.0 && args.tol.is_finite()) {
        return Err(anyhow!("--tol must be positive, got {}", args.tol)).usage();
    }
    let selected: Vec<&str> = if args.channel == "all" {
        channels::builtin().names().collect()
    } else {
        vec![channels::builtin().get(&args.channel).usage()?.name()]
    };
    let label = if args.channel == "all" { "all" } else { selected[0] };
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("discrepancy_{label}.txt")));

    let claims = ReferenceClaims::published();
    let inputs = reproduce(&selected, &claims, args.tol).runtime()?;
    for (channel, verdicts) in &inputs.verdicts {
        println!("no-squeezing verdicts: {channel}");
        println!("{:>9} {:>9}  {:<8} {:>16} {:>7} {:>8}", "theta", "phi", "flagged", "min epsilon", "alpha", "gamma_t");
        for v in verdicts {
            println!(
                "{:>9} {:>9}  {:<8} {:>16} {:>7} {:>8}",
                v.theta_deg,
                v.phi_deg,
                v.flagged,
                sig12(v.min_epsilon_over_grid),
                v.alpha_at_min,
                v.gamma_t_at_min
            );
        }
        println!();
    }
    let report = discrepancy_report(&inputs, &claims);
    print!("{}", report.render());
    write_report(&report, &out).runtime()?;
    println!("\nreport written to {}", out.display());
    Ok(ExitCode::SUCCESS)
}

fn grid(flag: &str, value: &Option<String>, default: Vec<f64>) -> Result<Vec<f64>, Failure> {
    match value {
        None => Ok(default),
        Some(text) => parse_grid(text).with_context(|| format!("--{flag}")).usage(),
    }
}

pub fn sweep(args: &SweepArgs) -> Outcome {
    let channel = channels::builtin().get(&args.channel).usage()?;
    let format: Format = args.format.parse().usage()?;
    let defaults = SweepSpec::defaults(channel.name());
    let spec = SweepSpec {
        channel: channel.name().to_owned(),
        alpha_grid: grid("alpha", &args.alpha, defaults.alpha_grid)?,
        theta_grid_deg: grid("theta", &args.theta, defaults.theta_grid_deg)?,
        phi_grid_deg: grid("phi", &args.phi, defaults.phi_grid_deg)?,
        gamma_t_grid: grid("gammat", &args.gammat, defaults.gamma_t_grid)?,
        direction_mode: args.direction_mode.parse().usage()?,
    };
    spec.validate().usage()?;
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("sweep.{format}")));

    let exec = if args.serial { Execution::Serial } else { Execution::Parallel };
    let records = run_sweep_with(channels::builtin(), &spec, exec).runtime()?;
    emit_results(&records, format, &out).runtime()?;

    println!("wrote {} records to {} ({format})", records.len(), out.display());
    if let Some(min) = records.iter().min_by(|a, b| a.epsilon.total_cmp(&b.epsilon)) {
        println!(
            "min epsilon {} at alpha={} theta={} phi={} gamma_t={}",
            sig12(min.epsilon),
            min.alpha,
            min.theta_deg,
            min.phi_deg,
            min.gamma_t
        );
    }
    Ok(ExitCode::SUCCESS)
}

pub fn check(args: &CheckArgs) -> Outcome {
    let results = run_checks(CheckOptions {
        inject_positive_exponent: args.inject_positive_exponent,
    })
    .runtime()?;
    let mut failed = Vec::new();
    for c in &results {
        let status = if c.passed { "PASS" } else { "FAIL" };
        if args.verbose {
            println!(
                "{status} {:<26} deviation {:.3e} (tolerance {:.0e}) {}",
                c.name, c.deviation, c.tolerance, c.detail
            );
        } else {
            println!("{status} {}", c.name);
        }
        if !c.passed {
            failed.push(c.name);
        }
    }
    if failed.is_empty() {
        println!("all {} checks passed", results.len());
        Ok(ExitCode::SUCCESS)
    } else {
        Err(anyhow!("failed checks: {}", failed.join(", "))).runtime()
    }
}
