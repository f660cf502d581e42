//! `catlab`: purity curves, parameter scans, optimizers and reference-plot
//! data for cat states in Gaussian channels.

mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use config::{Command, Overrides, RunConfig, SweepParam};
use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "catlab", version, about)]
struct Args {
    #[arg(long, value_enum)]
    command: Option<Command>,
    /// Cat amplitude |beta0|.
    #[arg(long, allow_negative_numbers = true)]
    beta_abs: Option<f64>,
    /// Orientation of beta0 in phase space.
    #[arg(long, allow_negative_numbers = true)]
    xi: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    r0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    phi0: Option<f64>,
    /// Relative phase of the superposition (0 even, pi odd).
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    gamma: Option<f64>,
    /// Bath occupation N.
    #[arg(long, allow_negative_numbers = true)]
    n: Option<f64>,
    /// Real part of the bath squeezing M.
    #[arg(long, allow_negative_numbers = true)]
    m1: Option<f64>,
    /// Imaginary part of the bath squeezing M.
    #[arg(long, allow_negative_numbers = true)]
    m2: Option<f64>,
    /// Final time in units of 1/Gamma.
    #[arg(long, allow_negative_numbers = true)]
    t_max: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    oracle_resolution: Option<usize>,
    /// Evaluation time for scans and optimizers (1/Gamma); defaults to the
    /// decoherence time.
    #[arg(long, allow_negative_numbers = true)]
    t_eval: Option<f64>,
    #[arg(long, value_enum)]
    sweep_param: Option<SweepParam>,
    #[arg(long, allow_negative_numbers = true)]
    sweep_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    sweep_max: Option<f64>,
    /// key=value file; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Args {
    fn overrides(&self) -> Overrides {
        Overrides {
            command: self.command,
            beta_abs: self.beta_abs,
            xi: self.xi,
            r0: self.r0,
            phi0: self.phi0,
            theta: self.theta,
            gamma: self.gamma,
            n: self.n,
            m1: self.m1,
            m2: self.m2,
            t_max: self.t_max,
            samples: self.samples,
            out: self.out.clone(),
            oracle_resolution: self.oracle_resolution,
            t_eval: self.t_eval,
            sweep_param: self.sweep_param,
            sweep_min: self.sweep_min,
            sweep_max: self.sweep_max,
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("CATLAB_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Validation(format!("CATLAB_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Validation(format!("thread pool: {e}")))
}

fn try_main(args: Args) -> Result<String, CliError> {
    configure_threads()?;
    let file = match &args.config {
        Some(path) => Overrides::load(path)?,
        None => Overrides::default(),
    };
    let cfg = RunConfig::resolve(file.merge(args.overrides()))?;
    commands::run(&cfg)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if e.use_stderr() => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{}", CliError::Validation(first.trim_start_matches("error: ").to_string()).machine_line());
            return ExitCode::from(1);
        }
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match try_main(args) {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.machine_line());
            ExitCode::from(e.exit_code())
        }
    }
}
