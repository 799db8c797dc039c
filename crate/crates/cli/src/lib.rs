//! Command-line front end: one subcommand per study, JSON or CSV reports,
//! and an on-disk cache of exact polynomials.
//!
//! Exit codes: 0 every check passed, 1 a check failed, 2 usage error,
//! 3 I/O error.

mod cache;
mod commands;
mod report;
mod schedule;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use cache::{Cache, Lookup};
pub use report::{Format, Report, Verdict};

#[derive(Parser, Debug)]
#[command(name = "fig8", version, about = "Colored Jones polynomials of the figure-eight knot")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Working precision in bits (at least 53).
    #[arg(long, global = true, default_value_t = 128)]
    pub precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for cached exact polynomials; created if missing.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate J_{N-l}(E; exp(a/N)).
    Eval {
        #[arg(long)]
        n: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 0)]
        l: u32,
        /// Also evaluate the exact polynomial and compare.
        #[arg(long)]
        exact: bool,
    },
    /// Convergence of J_N(E; exp(a/N)) to 1/(3 - 2cosh a).
    Limit {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        schedule: Option<String>,
        /// Run outside the region; results are marked exploratory.
        #[arg(long)]
        allow_outside: bool,
    },
    /// Gap between J_N and J_{N-l} at exp(a/N).
    Shifted {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        l: u32,
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long)]
        allow_outside: bool,
    },
    /// Growth rate (2pi/N) log J_N(E; exp(2pi i/N)).
    Growth {
        #[arg(long)]
        schedule: Option<String>,
    },
    /// Small-h expansion coefficients fitted as polynomials in N.
    Mmr {
        #[arg(long, default_value_t = 6)]
        j_max: usize,
        /// Colours to sample, e.g. 2..10.
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Grid checks of the analytic inequalities.
    Lemmas {
        /// Run every check (the default when no --lemma is given).
        #[arg(long)]
        all: bool,
        #[arg(long = "lemma")]
        lemmas: Vec<String>,
        /// Quarter-resolution grids for quick runs.
        #[arg(long)]
        coarse: bool,
    },
    /// Exact check of the inhomogeneous recursion, e.g. --n 3..10.
    Recursion {
        #[arg(long)]
        n: String,
    },
    /// Classify a parameter against the convergence region.
    Region {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

/// What a run produced; `stdout` is empty when the report went to `--out`.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.run.jobs {
        // a second run in the same process finds the pool already sized
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let format = Format::from(cli.run.format);
    let out = cli.run.out.clone();
    let result = commands::dispatch(cli.command, &cli.run).and_then(|report| {
        let body = report.render(format)?;
        let stdout = match &out {
            Some(path) => {
                report::write_file(path, &body)?;
                String::new()
            }
            None => body,
        };
        Ok((report, stdout))
    });
    match result {
        Ok((report, stdout)) => {
            let stderr = report
                .verdicts
                .iter()
                .map(|v| format!("{}: {}\n", v.name, if v.passed { "pass" } else { "FAIL" }))
                .collect();
            Outcome {
                code: if report.passed() { 0 } else { 1 },
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            code: commands::exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e:#}\n"),
        },
    }
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => Outcome {
            code: e.exit_code() as u8,
            stdout: if e.use_stderr() { String::new() } else { e.to_string() },
            stderr: if e.use_stderr() {
                e.render().to_string()
            } else {
                String::new()
            },
        },
    }
}
