//! Batch experiment driver: generate graphs and lower-bound instances, verify
//! them, run schemes over seeded trials, decode planted bits and tabulate the
//! bound formulas.

mod bounds;
mod config;
mod decode;
mod gen;
mod output;
mod run;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::output::Output;

#[derive(Debug, Parser)]
#[command(name = "hybrid-routing", version, about, args_override_self = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Base seed; trial `i` uses `seed + i`.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads for independent trials (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Directory for output files; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Omit the timestamp comment line at the top of CSV files.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
    /// TOML file with defaults: top-level keys for global flags, a table
    /// per subcommand (`[run]`, `[gen]`, ...) for its flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph or a lower-bound instance as JSON.
    Gen(gen::GenArgs),
    /// Check an instance's planted distances and print per-pair results.
    Verify(verify::VerifyArgs),
    /// Build schemes over seeded trials and measure cost and stretch.
    Run(run::RunArgs),
    /// Build exact schemes on an instance and decode the planted bits.
    Decode(decode::DecodeArgs),
    /// Lower-bound tables, trade-offs and girth densities.
    Bounds(bounds::BoundsArgs),
}

/// Outcome of a command: `Ok(true)` when every verification passed.
pub type Outcome = anyhow::Result<bool>;

fn main() -> ExitCode {
    let argv = match config::merge_args(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(argv);
    if cli.global.jobs > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let out = Output::new(cli.global.out.clone(), !cli.global.no_timestamp);
    let g = &cli.global;
    let result = match &cli.command {
        Command::Gen(a) => gen::cmd(g, a, &out),
        Command::Verify(a) => verify::cmd(g, a, &out),
        Command::Run(a) => run::cmd(g, a, &out),
        Command::Decode(a) => decode::cmd(g, a, &out),
        Command::Bounds(a) => bounds::cmd(g, a, &out),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
