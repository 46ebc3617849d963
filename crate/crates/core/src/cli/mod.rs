//! Command-line harness around the library.

pub mod commands;
pub mod config;
pub mod record;
pub mod verify;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::kneading::KneadingError;
use crate::newton::NewtonError;
use crate::reduction::ReductionError;
use crate::symbolic::SymbolicError;

pub use commands::TreeFormat;
pub use config::{SweepArgs, SweepConfig};
pub use record::{sidecar_path, write_with_record, RunRecord};
pub use verify::{run_suite, Report, Suite};

/// Environment variable holding the worker count for parallel sweeps.
pub const WORKERS_ENV: &str = "NEWTON_QUINTIC_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}: {1}")]
    Io(String, String),
    #[error("digest of {0} does not match its record")]
    Digest(String),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error(transparent)]
    Kneading(#[from] KneadingError),
}

#[derive(Debug, Parser)]
#[command(
    name = "newton-quintic",
    version,
    about = "Newton-map dynamics of x^5 - c x + 1"
)]
pub struct Cli {
    /// Worker threads for sweeps
    #[arg(long, global = true, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    /// Write output here (plus a `.run.json` record) instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce x^5 + a x + b to a canonical family member
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        a: f64,
        #[arg(long, allow_hyphen_values = true)]
        b: f64,
    },
    /// Post-transient critical orbit samples as CSV `c,x`
    Bifurcation(SweepArgs),
    /// Topological entropy as CSV `c,entropy,method,period`
    EntropyCurve(SweepArgs),
    /// Admissible kneading tree with its polynomials
    Tree {
        #[arg(long, default_value_t = 4)]
        max_level: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Text)]
        format: TreeFormat,
    },
    /// Run a verification suite and print a JSON report
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Symbolic itinerary of a point
    Itinerary {
        #[arg(long, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, default_value_t = 64)]
        length: usize,
    },
    /// Superstable parameter of a word `(W C)^inf` inside a bracket
    FindWindow {
        #[arg(long)]
        word: String,
        #[arg(long)]
        c_min: f64,
        #[arg(long)]
        c_max: f64,
    },
}

/// Output text, record snapshot and whether the command succeeded.
struct Outcome {
    text: String,
    config: serde_json::Value,
    success: bool,
}

fn execute(command: &Command) -> Result<Outcome, CliError> {
    let ok = |text: String, config: serde_json::Value| Outcome {
        text,
        config,
        success: true,
    };
    Ok(match command {
        Command::Reduce { a, b } => ok(
            commands::reduce_report(*a, *b)?,
            serde_json::json!({"a": a, "b": b}),
        ),
        Command::Bifurcation(args) => {
            let cfg = SweepConfig::resolve(args)?;
            ok(commands::bifurcation_csv(&cfg), serde_json::json!(cfg))
        }
        Command::EntropyCurve(args) => {
            let cfg = SweepConfig::resolve(args)?;
            ok(commands::entropy_curve_csv(&cfg), serde_json::json!(cfg))
        }
        Command::Tree { max_level, format } => ok(
            commands::tree_output(*max_level, *format)?,
            serde_json::json!({"max_level": max_level, "format": format!("{format:?}")}),
        ),
        Command::Verify { suite, seed } => {
            let report = run_suite(*suite, *seed);
            Outcome {
                text: serde_json::to_string_pretty(&report).expect("plain data serialises") + "\n",
                config: serde_json::json!({"suite": suite.name(), "seed": seed}),
                success: report.passed,
            }
        }
        Command::Itinerary { c, x0, length } => ok(
            commands::itinerary_output(*c, *x0, *length)?,
            serde_json::json!({"c": c, "x0": x0, "length": length}),
        ),
        Command::FindWindow { word, c_min, c_max } => ok(
            commands::find_window_output(word, *c_min, *c_max)?,
            serde_json::json!({"word": word, "c_min": c_min, "c_max": c_max}),
        ),
    })
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Reduce { .. } => "reduce",
        Command::Bifurcation(_) => "bifurcation",
        Command::EntropyCurve(_) => "entropy-curve",
        Command::Tree { .. } => "tree",
        Command::Verify { .. } => "verify",
        Command::Itinerary { .. } => "itinerary",
        Command::FindWindow { .. } => "find-window",
    }
}

/// Runs a parsed command line; `Ok(false)` signals a failed verification.
pub fn run(cli: &Cli) -> Result<bool, CliError> {
    let outcome = match cli.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Config(e.to_string()))?
            .install(|| execute(&cli.command))?,
        None => execute(&cli.command)?,
    };
    match &cli.out {
        Some(path) => {
            let record = RunRecord::new(command_name(&cli.command), outcome.config);
            write_with_record(path, &outcome.text, record)?;
        }
        None => print!("{}", outcome.text),
    }
    Ok(outcome.success)
}
