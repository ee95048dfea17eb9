//! Command-line surface of the `voi` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use voi_core::model::{self, VoiConfig};
use voi_core::sim::{self, SchedulerPolicy};
use voi_core::sweep::{self, Spacing};

use crate::error::CliError;
use crate::files::{self, parse_ratio};
use crate::output;

#[derive(Debug, Parser)]
#[command(
    name = "voi",
    version,
    about = "Value-of-information assessment and dissemination experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score every source across a range of gamma values.
    Sweep(SweepArgs),
    /// Run a dissemination scenario under the value and FIFO schedulers.
    Simulate(SimulateArgs),
    /// Validate a config and print its weights and consistency report.
    Check(CheckArgs),
}

fn ratio(text: &str) -> Result<f64, String> {
    parse_ratio(text).ok_or_else(|| format!("expected a number or fraction, got {text:?}"))
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Application config (JSON). Defaults to the built-in safety config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value = "1/9", value_parser = ratio)]
    pub gamma_min: f64,
    #[arg(long, default_value = "9", value_parser = ratio)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Space gamma values geometrically instead of linearly.
    #[arg(long)]
    pub log_spacing: bool,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub scenario: PathBuf,
    /// Per-scheduler metrics CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-transmission CSV of the value-scheduler run.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    /// Application config (JSON). Defaults to the built-in safety config.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the config's `gamma` field.
    #[arg(long, value_parser = ratio)]
    pub gamma: Option<f64>,
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

fn load_or_default(path: Option<&Path>) -> Result<(VoiConfig, Option<f64>), CliError> {
    match path {
        Some(p) => files::load_voi_config(p),
        None => Ok((VoiConfig::safety_default(), Some(3.0))),
    }
}

/// Runs a parsed command and returns what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    match cli.command {
        Command::Sweep(args) => run_sweep(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Check(args) => run_check(args),
    }
}

fn run_sweep(args: SweepArgs) -> Result<String, CliError> {
    let (config, _) = load_or_default(args.config.as_deref())?;
    let spacing = if args.log_spacing {
        Spacing::Log
    } else {
        Spacing::Linear
    };
    let rows =
        sweep::gamma_sweep_with(&config, args.gamma_min, args.gamma_max, args.steps, spacing)?;
    let csv = output::sweep_csv(&config.sources, &rows);
    match args.out {
        Some(path) => {
            write_file(&path, &csv)?;
            Ok(output::sweep_summary(
                &rows,
                &sweep::consistent_region(&rows),
            ))
        }
        None => Ok(csv),
    }
}

fn run_simulate(args: SimulateArgs) -> Result<String, CliError> {
    let scenario = files::load_scenario(&args.scenario)?;
    let voi = sim::run_with(&scenario, SchedulerPolicy::Voi)?;
    let fifo = sim::run_with(&scenario, SchedulerPolicy::Fifo)?;
    let results = [
        (SchedulerPolicy::Voi, voi.metrics),
        (SchedulerPolicy::Fifo, fifo.metrics),
    ];
    if let Some(path) = &args.out {
        write_file(path, &output::metrics_csv(&results))?;
    }
    if let Some(path) = &args.log {
        write_file(path, &output::transmission_log_csv(&voi.log))?;
    }
    Ok(output::simulation_summary(&results))
}

fn run_check(args: CheckArgs) -> Result<String, CliError> {
    let (config, file_gamma) = load_or_default(args.config.as_deref())?;
    let gamma = args.gamma.or(file_gamma);
    if config.gamma_slot.is_some() && gamma.is_none() {
        return Err(CliError::Field {
            field: "gamma".into(),
            message: "config has a gamma cell; set `gamma` in the file or pass --gamma".into(),
        });
    }
    let assessment = model::assess(&config, gamma.unwrap_or(1.0))?;
    let shown = config.gamma_slot.and(gamma);
    Ok(output::check_report(&config, shown, &assessment))
}
