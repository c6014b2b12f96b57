//! Batch front-end: one subcommand per pipeline, JSON configs, seeded and
//! byte-reproducible CSV/JSON outputs.

mod commands;
mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::output::Meta;

#[derive(Parser)]
#[command(name = "riesz-witness", version, about = "Riesz-product witnesses for Fourier multipliers on W^1_1(R^2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// JSON config file; missing keys take their defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the config's seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory (created if needed).
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Record wall time in the output metadata (makes outputs
    /// run-dependent).
    #[arg(long, global = true)]
    wall_time: bool,
    /// Worker threads (overrides the config; default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// L¹ norms of the Riesz product and of its modified form.
    RieszNorm,
    /// Growth of the signed or exponential Riesz sums.
    ZGrowth,
    /// Construct and verify a ball scheme.
    Scheme,
    /// Lattice-to-plane identity residuals and plane norms.
    TransferCheck,
    /// Radial classification of a symbol.
    Classify,
    /// Lower-bound chain for a symbol over several depths.
    Witness,
}

/// A problem with the user's configuration (exit code 2).
#[derive(Debug)]
pub struct ConfigError(pub String);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn progress(msg: &str) {
    eprintln!("[riesz-witness] {msg}");
}

/// Config fields shared by every command.
trait Common {
    fn seed_mut(&mut self) -> &mut u64;
    fn threads(&self) -> Option<usize>;
    fn threads_mut(&mut self) -> &mut Option<usize>;
}

macro_rules! common {
    ($($t:ty),*) => {$(
        impl Common for $t {
            fn seed_mut(&mut self) -> &mut u64 { &mut self.seed }
            fn threads(&self) -> Option<usize> { self.threads }
            fn threads_mut(&mut self) -> &mut Option<usize> { &mut self.threads }
        }
    )*};
}

common!(
    config::RieszNormConfig,
    config::ZGrowthConfig,
    config::SchemeConfig,
    config::TransferConfig,
    config::ClassifyConfig,
    config::WitnessConfig
);

fn run_with<C, F>(cli: &Cli, name: &'static str, f: F) -> Result<()>
where
    C: DeserializeOwned + Serialize + Default + Common,
    F: FnOnce(&C, &Meta, &Path) -> Result<()>,
{
    let mut cfg: C = config::load(cli.config.as_deref())?;
    if let Some(seed) = cli.seed {
        *cfg.seed_mut() = seed;
    }
    if cli.threads.is_some() {
        *cfg.threads_mut() = cli.threads;
    }
    if let Some(n) = cfg.threads() {
        if n == 0 {
            return Err(ConfigError("threads must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| ConfigError(format!("thread pool: {e}")))?;
    }
    let seed = *cfg.seed_mut();
    let meta = Meta::new(name, &cfg, seed, cli.wall_time)?;
    f(&cfg, &meta, &cli.out_dir)
}

fn run(cli: &Cli) -> Result<()> {
    match cli.command {
        Command::RieszNorm => run_with(cli, "riesz-norm", commands::riesz_norm),
        Command::ZGrowth => run_with(cli, "z-growth", commands::z_growth),
        Command::Scheme => run_with(cli, "scheme", commands::scheme),
        Command::TransferCheck => run_with(cli, "transfer-check", commands::transfer_check),
        Command::Classify => run_with(cli, "classify", commands::classify),
        Command::Witness => run_with(cli, "witness", commands::witness),
    }
}

/// 2 for configuration problems, 1 for failures of a mathematical stage.
fn exit_code(err: &anyhow::Error) -> u8 {
    use riesz_witness::Error as E;
    for cause in err.chain() {
        if cause.downcast_ref::<ConfigError>().is_some() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e.root() {
                E::InvalidParameter(_) | E::Parse { .. } | E::Json(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
