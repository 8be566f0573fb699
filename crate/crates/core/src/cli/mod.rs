//! Command-line driver: JSON experiment configs in, CSV tables and JSON sidecars out.

pub mod config;
pub mod experiments;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

pub use config::{Axis, Experiment, ExperimentConfig, SweepParameter};
pub use experiments::{build_window, run, validate, Outcome};
pub use table::{Cell, ResultTable};

pub const SPEC_VERSION: &str = "1";
pub const THREADS_ENV: &str = "SUPEROSC_THREADS";
const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (spec ", "1", ")");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{operation} failed: {source}")]
    Numerical {
        operation: &'static str,
        #[source]
        source: crate::Error,
    },
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical { .. } | CliError::Io(_) => 3,
        }
    }

    /// Machine-readable error line for stderr.
    pub fn record(&self) -> serde_json::Value {
        match self {
            CliError::Config(m) => json!({ "error": "config", "exit_code": 2, "message": m }),
            CliError::Numerical { operation, source } => {
                json!({ "error": "numerical", "exit_code": 3, "operation": operation, "message": source.to_string() })
            }
            CliError::Io(m) => json!({ "error": "io", "exit_code": 3, "message": m }),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "superosc", version = VERSION, about = "Superoscillatory windows and remote state preparation experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one experiment described by a JSON config.
    Run(RunArgs),
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; falls back to SUPEROSC_THREADS, then all cores.
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Check the config and exit without running.
    #[arg(long)]
    pub validate: bool,
}

pub fn load_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| CliError::Config(format!("{THREADS_ENV}={v} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

/// Runs `run` to completion and writes the table and its sidecar.
pub fn execute(args: &RunArgs) -> Result<Option<PathBuf>, CliError> {
    let mut cfg = load_config(&args.config)?;
    if args.seed.is_some() {
        cfg.seed = args.seed;
    }
    validate(&cfg)?;
    let threads = thread_count(args.threads)?;
    if args.validate {
        return Ok(None);
    }
    let out = args
        .out
        .clone()
        .or_else(|| cfg.output.clone())
        .ok_or_else(|| CliError::Config("no output path: pass --out or set \"output\"".into()))?;

    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    let started = Instant::now();
    let outcome = pool.install(|| run(&cfg))?;
    let wall = started.elapsed().as_secs_f64();

    let file = File::create(&out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    outcome.table.write_csv(BufWriter::new(file)).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;

    let meta = json!({
        "artifact": "superosc",
        "version": env!("CARGO_PKG_VERSION"),
        "spec_version": SPEC_VERSION,
        "experiment": cfg.experiment.name(),
        "config": cfg,
        "threads": pool.current_num_threads(),
        "wall_time_s": wall,
        "columns": outcome.table.columns(),
        "rows": outcome.table.rows().len(),
        "summary": outcome.summary,
    });
    let side = sidecar_path(&out);
    let text = serde_json::to_string_pretty(&meta).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(&side, text + "\n").map_err(|e| CliError::Io(format!("{}: {e}", side.display())))?;
    Ok(Some(out))
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                print!("{e}");
                return 0;
            }
            let err = CliError::Config(e.to_string().trim().to_owned());
            eprintln!("{}", err.record());
            return err.exit_code();
        }
    };
    let Command::Run(args) = cli.command;
    match execute(&args) {
        Ok(None) => {
            println!("{}", json!({ "valid": true, "config": args.config }));
            0
        }
        Ok(Some(_)) => 0,
        Err(e) => {
            eprintln!("{}", e.record());
            e.exit_code()
        }
    }
}
