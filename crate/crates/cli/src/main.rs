//! `lctds` experiment runner.
//!
//! Exit codes: 0 success, 1 config error, 2 validation failure,
//! 3 unstable system, 4 numerical failure.

mod commands;
mod config;
mod error;
mod report;
mod rng;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{ExperimentConfig, SignalConfig};
use error::CliError;
use report::RunReport;

#[derive(Parser, Debug)]
#[command(
    name = "lctds",
    version,
    about = "Linear canonical transform dynamical sampling experiments"
)]
struct Cli {
    /// TOML experiment configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory; overrides `[output] dir`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Grid resolution N per torus axis; overrides `[grid] n`.
    #[arg(long = "grid-n", global = true)]
    grid_n: Option<usize>,
    /// Seed of a random signal; overrides `[signal] seed`.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Stability threshold alpha; overrides `[thresholds] alpha`.
    #[arg(long, global = true)]
    threshold: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the transform parameters and list the lattice cosets.
    Validate,
    /// Write |det A_M| and its condition number on the N x N torus grid.
    Detmap,
    /// Sample a signal dynamically and recover it.
    Reconstruct,
    /// Recover shift-invariant coefficients from dynamical samples.
    SiReconstruct,
    /// Run the built-in worked example.
    PaperExample {
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c1: f64,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c2: f64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Detmap => "detmap",
            Command::Reconstruct => "reconstruct",
            Command::SiReconstruct => "si-reconstruct",
            Command::PaperExample { .. } => "paper-example",
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("LCTDS_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| {
        CliError::Config(format!(
            "LCTDS_THREADS must be a positive integer, got {v:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))
}

fn load_config(cli: &Cli) -> Result<ExperimentConfig, CliError> {
    let mut cfg = match (&cli.command, &cli.config) {
        (Command::PaperExample { c1, c2 }, _) => ExperimentConfig::worked_example(*c1, *c2),
        (_, Some(path)) => ExperimentConfig::load(path)?,
        (_, None) => return Err(CliError::Config("--config is required".into())),
    };
    if let Some(out) = &cli.out {
        cfg.output.dir = out.clone();
    }
    if let Some(n) = cli.grid_n {
        cfg.grid.n = n;
    }
    if let Some(t) = cli.threshold {
        cfg.thresholds.alpha = t;
    }
    if let Some(seed) = cli.seed {
        match &mut cfg.signal {
            SignalConfig::Random { seed: s, .. } => *s = seed,
            SignalConfig::Sparse { .. } => {
                return Err(CliError::Config("--seed needs a random signal".into()))
            }
        }
    }
    Ok(cfg)
}

fn run(cli: &Cli, report: &mut RunReport) -> Result<(), CliError> {
    let cfg = load_config(cli)?;
    report.config = Some(cfg.clone());
    let out = cfg.output.dir.clone();
    std::fs::create_dir_all(&out)?;
    let result = match &cli.command {
        Command::Validate => commands::validate(&cfg, report),
        Command::Detmap => commands::detmap(&cfg, &out, report),
        Command::Reconstruct => commands::reconstruct(&cfg, &out, report),
        Command::SiReconstruct => commands::si_reconstruct(&cfg, &out, report),
        Command::PaperExample { c1, c2 } => commands::worked_example(*c1, *c2, &cfg, &out, report),
    };
    if let Err(e) = &result {
        report.record_error(e);
    }
    report.write(&out)?;
    result
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut report = RunReport::new(cli.command.name());
    let outcome = configure_threads().and_then(|_| run(&cli, &mut report));
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error [{}]: {e}", e.kind());
            ExitCode::from(e.exit_code())
        }
    }
}
