//! `qdr`: run scenario files and self-check suites.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use qdr_core::suites::{self, SuiteOptions, SUITES};

use qdr_cli::model::{max_dim, Model};
use qdr_cli::report::Report;
use qdr_cli::run::{self, RunOptions};
use qdr_cli::scenario::Scenario;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "qdr", version, about = "Exact computations in the quantum de Rham complex")]
struct Cli {
    /// TOML scenario file.
    #[arg(long, short = 's')]
    scenario: Option<PathBuf>,
    /// Run one self-check suite.
    #[arg(long, short = 'c')]
    check: Option<String>,
    /// Ambient dimension (overrides the scenario).
    #[arg(long)]
    dim: Option<usize>,
    /// Size parameter for suites and tasks that take one.
    #[arg(long)]
    n: Option<usize>,
    /// Fourier truncation on tori.
    #[arg(long)]
    truncation: Option<i32>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of random samples for suites.
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// List the self-check suites and exit.
    #[arg(long)]
    list_suites: bool,
}

/// Exit status for unusable input.
const USAGE: u8 = 2;

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", report.to_json()),
    }
    if report.summary.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.list_suites {
        let w = SUITES.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
        for (name, about) in SUITES {
            println!("{name:<w$}  {about}");
        }
        return ExitCode::SUCCESS;
    }
    if let Some(d) = cli.dim {
        if d > max_dim() {
            return fail(format!("dimension {d} exceeds the maximum {} (set QDR_MAX_DIM to raise it)", max_dim()));
        }
    }
    let seed = cli.seed.unwrap_or(0);
    match (&cli.scenario, &cli.check) {
        (None, None) => fail("nothing to do: pass --scenario FILE or --check SUITE"),
        (Some(_), Some(_)) => fail("--scenario and --check are mutually exclusive"),
        (None, Some(name)) => {
            let opts = SuiteOptions { dim: cli.dim, n: cli.n, truncation: cli.truncation, seed, samples: cli.samples };
            match run::suite_task(name, 0, &opts) {
                Ok(t) => emit(&Report::new("suite", cli.dim.unwrap_or(0), seed, vec![t], vec![]), cli.format),
                Err(qdr_core::Error::UnknownSuite { name, .. }) => {
                    fail(format!("unknown suite {name:?}; available suites: {}", suites::available()))
                }
                Err(e) => fail(e),
            }
        }
        (Some(path), None) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            let scenario = match Scenario::parse(&text) {
                Ok(s) => s,
                Err(e) => return fail(format!("{}: {e}", path.display())),
            };
            let model = match Model::build(&scenario, cli.dim, cli.truncation) {
                Ok(m) => m,
                Err(e) => return fail(e),
            };
            let seed = cli.seed.or(scenario.seed).unwrap_or(0);
            let opts = RunOptions { seed, samples: cli.samples, n: cli.n };
            let tasks = match run::run_scenario(&scenario, &model, &opts) {
                Ok(t) => t,
                Err(e) => return fail(e),
            };
            let ledger = if tasks.is_empty() {
                Vec::new()
            } else {
                match run::ledger(seed) {
                    Ok(l) => l,
                    Err(e) => return fail(e),
                }
            };
            emit(&Report::new(model.name(), model.dim, seed, tasks, ledger), cli.format)
        }
    }
}
