//! Command-line front end: problem documents in, reports out.

mod compute;
mod report;
mod spec;
mod suites;

use std::io::{Read, Write};

use clap::{Parser, Subcommand};
use thiserror::Error;

use crate::covers::CoverError;
use crate::gw_series::SeriesError;
use crate::lattice::LatticeError;

pub use compute::{run_convolve, run_deck, run_psi, run_series, series_of};
pub use report::{Report, ReportItem, Status};
pub use spec::{
    parse_spec, print_spec, Contact, ContactDoc, ContactTuple, ConvolveProblem, ConvolveSetup,
    CoversDoc, DeckProblem, InputDoc, Kind, ModulesDoc, ProblemSpec, PsiProblem, SeriesName,
    SeriesRequest, Suite, TorusDoc,
};
pub use suites::{run_suite, SuiteParams};

pub const DEFAULT_ORDER: usize = 30;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at line {line}: field `{field}`: {message}")]
    Schema {
        field: String,
        line: usize,
        message: String,
    },
    #[error("expected a `{expected}` document, got `{got}`")]
    KindMismatch { expected: Kind, got: Kind },
    #[error("{0}")]
    Compute(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),
}

/// Defaults for fields a document leaves out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub order: usize,
    pub trials: Option<usize>,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            order: DEFAULT_ORDER,
            trials: None,
            seed: 0,
        }
    }
}

/// Runs a parsed document; document fields override `opts`.
pub fn run(spec: &ProblemSpec, opts: &RunOptions) -> Result<Report, CliError> {
    match spec {
        ProblemSpec::Deck(p) => run_deck(p),
        ProblemSpec::Psi(p) => run_psi(p),
        ProblemSpec::Convolve(p) => run_convolve(p),
        ProblemSpec::Series { series, order } => Ok(run_series(*series, order.unwrap_or(opts.order))),
        ProblemSpec::Verify {
            suite,
            order,
            trials,
            seed,
        } => {
            let params = SuiteParams {
                order: order.unwrap_or(opts.order),
                trials: trials.or(opts.trials),
                seed: seed.unwrap_or(opts.seed),
            };
            let items = run_suite(*suite, &params)?;
            Ok(Report::checks(&format!("verify {}", suite.name()), items))
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "rimtori", version, about = "Deck groups of abelian covers and section-class q-series")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Truncation order for series.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Number of random trials for randomised suites.
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Seed for randomised suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run any problem document (stdin when FILE is omitted or `-`).
    Run { file: Option<String> },
    /// Deck group of a cover given as a `deck` document.
    Deck { file: Option<String> },
    /// Diagonal component index of a pair, from a `psi` document.
    Psi { file: Option<String> },
    /// Convolution of two cover points, from a `convolve` document.
    Convolve { file: Option<String> },
    /// Coefficients of G, eta12 (E^-12), F <genus> or H.
    Series {
        #[arg(value_parser = ["G", "eta12", "F", "H"])]
        name: String,
        genus: Option<u32>,
    },
    /// Run a verification suite, or `all`.
    Verify {
        #[arg(value_parser = ["snf", "deck", "equivariance", "convolution", "bryan-leung", "trr", "sympsum", "all"])]
        suite: String,
    },
}

fn read_input(file: &Option<String>, stdin: &mut dyn Read) -> Result<String, CliError> {
    match file.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            Ok(s)
        }
        Some(path) => Ok(std::fs::read_to_string(path)?),
    }
}

fn parse_kind(text: &str, expected: Kind) -> Result<ProblemSpec, CliError> {
    let spec = parse_spec(text)?;
    if spec.kind() != expected {
        return Err(CliError::KindMismatch {
            expected,
            got: spec.kind(),
        });
    }
    Ok(spec)
}

fn suite_by_name(name: &str) -> Option<Suite> {
    Suite::ALL.into_iter().find(|s| s.name() == name)
}

/// Executes a parsed command line.
pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Result<Report, CliError> {
    let opts = RunOptions {
        order: cli.order,
        trials: cli.trials,
        seed: cli.seed,
    };
    let spec = match &cli.command {
        Command::Run { file } => parse_spec(&read_input(file, stdin)?)?,
        Command::Deck { file } => parse_kind(&read_input(file, stdin)?, Kind::Deck)?,
        Command::Psi { file } => parse_kind(&read_input(file, stdin)?, Kind::Psi)?,
        Command::Convolve { file } => parse_kind(&read_input(file, stdin)?, Kind::Convolve)?,
        Command::Series { name, genus } => {
            let series = match (name.as_str(), genus) {
                ("F", Some(g)) => SeriesRequest::F(*g),
                ("F", None) => return Err(CliError::Compute("series F needs a genus".into())),
                (_, Some(_)) => return Err(CliError::Compute(format!("series {name} takes no genus"))),
                ("G", None) => SeriesRequest::G,
                ("eta12", None) => SeriesRequest::Eta12,
                _ => SeriesRequest::H,
            };
            ProblemSpec::Series {
                series,
                order: None,
            }
        }
        Command::Verify { suite } if suite == "all" => {
            let reports = Suite::ALL
                .iter()
                .map(|&s| {
                    run(
                        &ProblemSpec::Verify {
                            suite: s,
                            order: None,
                            trials: None,
                            seed: None,
                        },
                        &opts,
                    )
                })
                .collect::<Result<Vec<_>, _>>()?;
            return Ok(Report::merge("verify all", reports));
        }
        Command::Verify { suite } => ProblemSpec::Verify {
            suite: suite_by_name(suite).expect("clap restricts names"),
            order: None,
            trials: None,
            seed: None,
        },
    };
    run(&spec, &opts)
}

/// Entry point of the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut out = std::io::stdout().lock();
    // a closed pipe downstream is not an error of ours
    match execute(&cli, &mut std::io::stdin()) {
        Ok(report) => {
            if cli.json {
                let _ = writeln!(out, "{}", report.to_json());
            } else {
                let _ = write!(out, "{}", report.to_text());
            }
            report.status.exit_code()
        }
        Err(e) => {
            if cli.json {
                let doc = serde_json::json!({"status": "error", "message": e.to_string()});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("json value"));
            } else {
                eprintln!("error: {e}");
            }
            2
        }
    }
}
