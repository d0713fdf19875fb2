//! `nonmarkov`: witness traces, integrated non-Markovianity measures, and CP
//! checks for time-local open-system models, driven by sectioned key=value
//! config files.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nonmarkov_cli::config::{Ini, RunConfig};
use nonmarkov_cli::{exit, run, CliError};

#[derive(Parser)]
#[command(
    name = "nonmarkov",
    version,
    about = "Non-Markovianity measures of open quantum systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Sectioned key=value config file.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Override a config entry: section.key=value (repeatable).
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Worker threads (sweep points run in parallel).
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one model: witness traces and integrated measures.
    Analyze(CommonArgs),
    /// Scan a model parameter and report all measures per point.
    Sweep(CommonArgs),
    /// Trace the Choi spectral floor and flag CP violations.
    CheckCp(CommonArgs),
}

fn load_config(args: &CommonArgs) -> Result<RunConfig, CliError> {
    let mut ini = Ini::load(&args.config)?;
    for spec in &args.set {
        ini.apply_set(spec)?;
    }
    let dir = args
        .config
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .map(Path::to_path_buf)
        .unwrap_or_else(|| PathBuf::from("."));
    RunConfig::from_ini(&ini, &dir)
}

fn execute(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Analyze(args) => {
            let cfg = load_config(&args)?;
            run::run_analyze(&cfg, &args.out)?;
            Ok(exit::OK)
        }
        Command::Sweep(args) => {
            let cfg = load_config(&args)?;
            run::run_sweep(&cfg, &args.out, args.jobs.max(1))?;
            Ok(exit::OK)
        }
        Command::CheckCp(args) => {
            let cfg = load_config(&args)?;
            let violated = run::run_check_cp(&cfg, &args.out)?;
            Ok(if violated { exit::CP_VIOLATION } else { exit::OK })
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
