//! Command-line front end: `simulate`, `geodesic`, `curvature`, `verify`.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 wave breaking,
//! 3 numerical instability or non-finite output, 4 identity check failure.

pub mod commands;
pub mod config;
pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use commands::{Fault, Outcome};
use config::{Overrides, RunConfig};
use output::NonFinite;

#[derive(Debug, Parser)]
#[command(
    name = "pi2ch",
    version,
    about = "Pseudo-spectral laboratory for the two-component π-Camassa–Holm system"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate the Eulerian system.
    Simulate(RunArgs),
    /// Integrate the geodesic equation and cross-check against the Eulerian run.
    Geodesic(RunArgs),
    /// Compare the two sectional curvature evaluations on random pairs.
    Curvature(RunArgs),
    /// Check the structural identities on random inputs.
    Verify {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<Fault>,
    },
}

#[derive(Debug, Args)]
struct RunArgs {
    /// JSON configuration file; defaults apply when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Grid size.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    dt: Option<f64>,
    #[arg(long = "t-end", allow_negative_numbers = true)]
    t_end: Option<f64>,
}

impl RunArgs {
    fn load(&self) -> anyhow::Result<RunConfig> {
        let o = Overrides {
            out: self.out.clone(),
            seed: self.seed,
            n: self.n,
            dt: self.dt,
            t_end: self.t_end,
        };
        RunConfig::load(self.config.as_deref(), &o)
    }
}

fn thread_pool() -> Result<(), String> {
    let Ok(raw) = std::env::var("PI2CH_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| format!("PI2CH_THREADS must be a positive integer, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| e.to_string())
}

fn dispatch(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Simulate(a) => commands::cmd_simulate(&a.load()?),
        Command::Geodesic(a) => commands::cmd_geodesic(&a.load()?),
        Command::Curvature(a) => commands::cmd_curvature(&a.load()?),
        Command::Verify { run, inject_fault } => commands::cmd_verify(&run.load()?, *inject_fault),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    if let Err(msg) = thread_pool() {
        eprintln!("error: {msg}");
        return 1;
    }
    match dispatch(&cli.command) {
        Ok(outcome) => {
            match &outcome {
                Outcome::WaveBreaking => eprintln!("halted: wave breaking"),
                Outcome::Instability => eprintln!("halted: numerical instability"),
                Outcome::IdentityFailure(names) => eprintln!("identity check failed: {}", names.join(", ")),
                Outcome::Completed => {}
            }
            outcome.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<NonFinite>().is_some() {
                3
            } else {
                1
            }
        }
    }
}
