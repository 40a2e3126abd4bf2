//! `dorelax`: configuration-driven front end for the distributed-order
//! relaxation library.
//!
//! Three subcommands, all driven by one JSON config (see `config.rs` for
//! the schema):
//!
//! * `eval`     solves u_λ on the grid, CSV to stdout or `--out`;
//! * `diagnose` runs the configured diagnostics, NDJSON records;
//! * `kernel`   tabulates k, ϰ, 𝒦, the spectral components or φ.
//!
//! Exit codes: 0 success, 2 configuration/validation error, 3 numerical
//! failure. Errors are emitted as one-line JSON objects on stderr.

mod commands;
mod config;
mod output;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::RunConfig;

#[derive(Parser)]
#[command(
    name = "dorelax",
    about = "Distributed-order fractional relaxation: solvers and decay-law diagnostics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the relaxation equation on the configured grid (CSV output).
    Eval {
        /// JSON run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output path; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Echo the normalized configuration and exit.
        #[arg(long)]
        print_config: bool,
    },
    /// Run the configured diagnostics (NDJSON output).
    Diagnose {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        print_config: bool,
    },
    /// Tabulate kernel-side evaluators on the configured grid (CSV output).
    Kernel {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        print_config: bool,
        /// Which evaluator to tabulate.
        #[arg(long, value_enum)]
        what: KernelWhatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelWhatArg {
    /// Convolution kernel k(s).
    #[value(name = "k")]
    LittleK,
    /// Antiderivative kappa(x).
    #[value(name = "kappa")]
    Kappa,
    /// Laplace symbol K(p) on the positive axis, with the p^{-1}M(log p)
    /// identity column.
    #[value(name = "K")]
    Symbol,
    /// Components (A, B) of pK(p) on the cut edge.
    #[value(name = "spectral-components")]
    SpectralComponents,
    /// Spectral density phi(r).
    #[value(name = "spectral-density")]
    SpectralDensity,
}

#[derive(Debug)]
pub enum CliError {
    /// Configuration or validation problem → exit 2.
    Config { kind: String, message: String },
    /// Numerical failure at run time → exit 3.
    Numeric { kind: String, message: String },
}

impl CliError {
    fn kind_of(err: &dorelax::Error) -> &'static str {
        use dorelax::Error::*;
        match err {
            NonPositiveWeight(_) => "NonPositiveWeight",
            AtomOutOfRange(_) => "AtomOutOfRange",
            MassAtZeroOnly => "MassAtZeroOnly",
            InfiniteMass(_) => "InfiniteMass",
            EmptyMeasure => "EmptyMeasure",
            InvalidParameter(_) => "InvalidParameter",
            QuadratureFailure(_) => "QuadratureFailure",
            DomainError(_) => "DomainError",
            NonMonotoneOutput { .. } => "NonMonotoneOutput",
            GridMismatch(_) => "GridMismatch",
            EmptyWindow => "EmptyWindow",
        }
    }

    pub fn config(err: dorelax::Error) -> Self {
        CliError::Config {
            kind: Self::kind_of(&err).to_string(),
            message: err.to_string(),
        }
    }

    pub fn numeric(err: dorelax::Error) -> Self {
        CliError::Numeric {
            kind: Self::kind_of(&err).to_string(),
            message: err.to_string(),
        }
    }

    fn parse(message: String) -> Self {
        CliError::Config {
            kind: "ConfigParse".to_string(),
            message,
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config { .. } => 2,
            CliError::Numeric { .. } => 3,
        }
    }

    fn emit(&self) {
        let (kind, message) = match self {
            CliError::Config { kind, message } | CliError::Numeric { kind, message } => {
                (kind, message)
            }
        };
        let obj = serde_json::json!({ "error": { "kind": kind, "message": message } });
        eprintln!("{obj}");
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        let kind = if e.kind() == std::io::ErrorKind::BrokenPipe {
            "BrokenPipe"
        } else {
            "Io"
        };
        CliError::Numeric {
            kind: kind.to_string(),
            message: e.to_string(),
        }
    }
}

fn load_config(path: &PathBuf) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("invalid config: {e}")))
}

/// Destination for command output.
fn with_output<F>(out: &Option<PathBuf>, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match out {
        Some(path) => {
            let mut file = fs::File::create(path)
                .map_err(|e| CliError::parse(format!("cannot create {}: {e}", path.display())))?;
            f(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock)
        }
    }
}

fn print_normalized(config: &RunConfig) -> Result<(), CliError> {
    // validate first so a bad config still exits 2 under --print-config
    config.validate_measure().map_err(CliError::config)?;
    let text = serde_json::to_string_pretty(config)
        .map_err(|e| CliError::parse(format!("config serialization: {e}")))?;
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    writeln!(lock, "{text}")?;
    Ok(())
}

fn run() -> Result<(), CliError> {
    let cli = Cli::parse();
    match cli.command {
        Command::Eval {
            config,
            out,
            print_config,
        } => {
            let cfg = load_config(&config)?;
            if print_config {
                return print_normalized(&cfg);
            }
            with_output(&out, |w| commands::cmd_eval(&cfg, w))
        }
        Command::Diagnose {
            config,
            out,
            print_config,
        } => {
            let cfg = load_config(&config)?;
            if print_config {
                return print_normalized(&cfg);
            }
            with_output(&out, |w| commands::cmd_diagnose(&cfg, w))
        }
        Command::Kernel {
            config,
            out,
            print_config,
            what,
        } => {
            let cfg = load_config(&config)?;
            if print_config {
                return print_normalized(&cfg);
            }
            let what = match what {
                KernelWhatArg::LittleK => config::KernelWhat::LittleK,
                KernelWhatArg::Kappa => config::KernelWhat::Kappa,
                KernelWhatArg::Symbol => config::KernelWhat::Symbol,
                KernelWhatArg::SpectralComponents => config::KernelWhat::SpectralComponents,
                KernelWhatArg::SpectralDensity => config::KernelWhat::SpectralDensity,
            };
            with_output(&out, |w| commands::cmd_kernel(&cfg, what, w))
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        // a downstream pipe closing early is not an error for a batch tool
        Err(CliError::Numeric { kind, .. }) if kind == "BrokenPipe" => ExitCode::SUCCESS,
        Err(e) => {
            e.emit();
            ExitCode::from(e.exit_code())
        }
    }
}
