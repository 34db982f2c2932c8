//! `dephase` — dephasing-rate diagnostics from the command line.
//!
//! Subcommands wrap the library one-to-one: `rates` evaluates the observable
//! decay rates and shifts of an operator set, `canonicalize` reduces a set
//! to canonical form, `invert` reconstructs canonical operators from
//! observed rates (flagging constraint violations), `check` runs the full
//! constraint hierarchy, `simulate` writes decay trajectories as CSV, and
//! `scan` maps the allowed non-local rate region for a register.
//!
//! Exit codes: 0 success, 2 input error, 3 constraint violation (`invert`).

mod commands;
mod formats;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{ScanArgs, SimulateArgs};

#[derive(Debug)]
pub(crate) struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    pub(crate) fn input(message: String) -> Self {
        Self { message, code: 2 }
    }

    pub(crate) fn violation(message: String) -> Self {
        Self { message, code: 3 }
    }
}

#[derive(Parser)]
#[command(
    name = "dephase",
    version,
    about = "Pure-dephasing rate diagnostics: canonical operators, feasibility constraints, decay simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dephasing rates and frequency shifts generated by an operator set.
    Rates {
        /// Operator-set JSON document.
        #[arg(long, short)]
        input: PathBuf,
        /// Rate-table JSON document to write.
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Reduce an operator set to canonical lower-triangular form.
    Canonicalize {
        /// Operator-set JSON document.
        #[arg(long, short)]
        input: PathBuf,
        /// Canonical-set JSON document to write (operators + dh).
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Reconstruct canonical operators from observed rates.
    ///
    /// Writes the canonical set on success; on a constraint violation,
    /// writes the constraint report instead and exits with code 3.
    Invert {
        /// Rate-table JSON document.
        #[arg(long, short)]
        input: PathBuf,
        /// Output JSON document.
        #[arg(long, short)]
        output: PathBuf,
        /// Feasibility tolerance override (default: 1e-10 * trace G).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Run the constraint hierarchy on a rate table; never fails on
    /// feasibility, the verdict goes into the report.
    Check {
        /// Rate-table JSON document.
        #[arg(long, short)]
        input: PathBuf,
        /// Report JSON document to write.
        #[arg(long, short)]
        output: PathBuf,
        /// Feasibility tolerance override (default: 1e-10 * trace G).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Propagate an initial state and write a CSV trajectory
    /// (t, min eigenvalue, concurrence for two qubits, |rho_mn|).
    Simulate {
        /// Built-in scenario: bell, cluster, or fig2 (fully coherent state
        /// under local rate gamma and non-local rates mu*gamma).
        #[arg(long, value_enum)]
        preset: Option<Preset>,
        /// Rate-table JSON document to propagate under (levels at zero).
        #[arg(long, conflicts_with = "preset")]
        rates: Option<PathBuf>,
        /// Model JSON document (operators + optional levels).
        #[arg(long, conflicts_with_all = ["preset", "rates"])]
        model: Option<PathBuf>,
        /// Initial state for --rates/--model runs.
        #[arg(long, value_enum, default_value_t = Initial::Uniform)]
        initial: Initial,
        /// Local dephasing rate.
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        /// Non-local rate multiplier (cluster, fig2).
        #[arg(long, conflicts_with_all = ["gamma14", "gamma23"])]
        mu: Option<f64>,
        /// Rate of the (1,4) coherence (bell, cluster).
        #[arg(long)]
        gamma14: Option<f64>,
        /// Rate of the (2,3) coherence (cluster).
        #[arg(long)]
        gamma23: Option<f64>,
        /// End of the time grid (default 5/gamma).
        #[arg(long)]
        t_max: Option<f64>,
        /// Number of grid points.
        #[arg(long, default_value_t = 501)]
        points: usize,
        /// CSV file to write.
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Map feasibility over non-local rate multipliers (mu1, mu2) and write
    /// a CSV grid in row-major order.
    Scan {
        /// Register size; 2 scans mu1 only, 3 scans the (mu1, mu2) plane.
        #[arg(long, default_value_t = 3)]
        qubits: usize,
        /// Local dephasing rate.
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long, default_value_t = 2.2)]
        mu1_max: f64,
        #[arg(long, default_value_t = 161)]
        mu1_points: usize,
        #[arg(long, default_value_t = 4.4)]
        mu2_max: f64,
        #[arg(long, default_value_t = 161)]
        mu2_points: usize,
        /// CSV file to write.
        #[arg(long, short)]
        output: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum Preset {
    Bell,
    Cluster,
    Fig2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub(crate) enum Initial {
    Uniform,
    Bell,
    Cluster,
}

fn distinct_paths(input: &PathBuf, output: &PathBuf) -> Result<(), CliError> {
    if input == output {
        return Err(CliError::input(format!(
            "input and output must be distinct paths, both are {}",
            input.display()
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rates { input, output } => {
            distinct_paths(&input, &output)?;
            commands::cmd_rates(&input, &output)
        }
        Command::Canonicalize { input, output } => {
            distinct_paths(&input, &output)?;
            commands::cmd_canonicalize(&input, &output)
        }
        Command::Invert { input, output, tol } => {
            distinct_paths(&input, &output)?;
            commands::cmd_invert(&input, &output, tol)
        }
        Command::Check { input, output, tol } => {
            distinct_paths(&input, &output)?;
            commands::cmd_check(&input, &output, tol)
        }
        Command::Simulate {
            preset,
            rates,
            model,
            initial,
            gamma,
            mu,
            gamma14,
            gamma23,
            t_max,
            points,
            output,
        } => {
            for source in rates.iter().chain(model.iter()) {
                distinct_paths(source, &output)?;
            }
            let args = SimulateArgs {
                preset,
                rates,
                model,
                initial,
                gamma,
                mu,
                gamma14,
                gamma23,
                t_max,
                points,
            };
            commands::cmd_simulate(&args, &output)
        }
        Command::Scan {
            qubits,
            gamma,
            mu1_max,
            mu1_points,
            mu2_max,
            mu2_points,
            output,
        } => {
            let args = ScanArgs {
                qubits,
                gamma,
                mu1_max,
                mu1_points,
                mu2_max,
                mu2_points,
            };
            commands::cmd_scan(&args, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
