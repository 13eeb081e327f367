//! `hyperiso`: reproducible experiments on isoperimetric quantities of
//! Boolean functions — influence and sensitivity reports, exact distance
//! to monotonicity, tribes-style counterexample sweeps of the directed
//! ratio, and corpus-wide inequality verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod error;
mod json;
mod main_args;
mod spec;
mod tablefmt;

use error::{CliError, CliResult};
use main_args::{GenFormat, ReportFormat};

#[derive(Parser)]
#[command(
    name = "hyperiso",
    version,
    about = "Isoperimetric analysis of Boolean functions on the hypercube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full metric report for one function (JSON)
    Analyze {
        /// Function spec: zoo:NAME,k=v... | file:PATH | tribes-ce:n=..,seed=..
        spec: String,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format; analyze emits JSON only
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
    },
    /// Per-seed table for the two-block tribes construction
    Counterexample {
        /// Tribe count (a power of two)
        #[arg(long)]
        n: u64,
        /// How many seeds to run
        #[arg(long, default_value_t = 20)]
        seeds: u32,
        /// Base seed; instance seeds are seed, seed+1, ...
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Monte Carlo budget per instance on the sampled route
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// CSV sweep of the directed ratio over tribe counts
    Sweep {
        /// Comma-separated tribe counts, e.g. 4,8,16
        #[arg(long = "n-list", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        #[arg(long, default_value_t = 20)]
        seeds: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Extra function specs reported as exact rows
        #[arg(long)]
        inject: Vec<String>,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the inequalities over a corpus; nonzero exit on violation
    Verify {
        /// Corpus items: exhaustive:m=3 | random:m=..,count=..,seed=.. | any function spec
        #[arg(required = true)]
        corpus: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a truth-table file for a function spec
    Gen {
        spec: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json-bits")]
        format: GenFormat,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { spec, out, format } => {
            if format != ReportFormat::Json {
                return Err(CliError::usage("analyze emits JSON only"));
            }
            commands::analyze::run(&spec, &out)
        }
        Command::Counterexample {
            n,
            seeds,
            seed,
            samples,
            format,
            out,
        } => commands::counterexample::run(n, seeds, seed, samples, format, &out),
        Command::Sweep {
            n_list,
            seeds,
            seed,
            samples,
            inject,
            format,
            out,
        } => {
            if format != ReportFormat::Csv {
                return Err(CliError::usage("sweep emits CSV only"));
            }
            commands::sweep::run(&n_list, seeds, seed, samples, &inject, &out)
        }
        Command::Verify { corpus, out } => commands::verify::run(&corpus, &out),
        Command::Gen { spec, out, format } => commands::gen::run(&spec, &out, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            ExitCode::from(err.exit_code())
        }
    }
}
