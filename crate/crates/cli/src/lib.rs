//! Command-line front end for `natstate-core`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod verify;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

pub use config::RunConfig;
pub use error::{CliError, CliResult};

use commands::{Statistics, SweepParam};

#[derive(Debug, Parser)]
#[command(
    name = "natstate",
    version,
    about = "Variational localized states of a model solid and self-gravitating clusters"
)]
pub struct Cli {
    /// JSON config file; omitted keys take the Krypton defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Write results here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimize the energy per particle over (λ, d) and report the cohesive
    /// energy, bulk modulus and a comparison with experiment (JSON).
    Optimize,
    /// Center-of-mass statistics of an N-particle solid (JSON).
    Observables {
        /// Orbital exponent, 1/σ.
        #[arg(long)]
        lambda: f64,
        /// Particle number.
        #[arg(long = "N")]
        n: f64,
        /// Galilean boost velocity vx,vy,vz in m/s.
        #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
        velocity: Option<Vec<f64>>,
        /// Free-evolution time in seconds.
        #[arg(long)]
        time: Option<f64>,
    },
    /// Center-of-mass spread of a superposition of translated states (JSON).
    ///
    /// The spec file is a JSON object with keys displacements (list of
    /// [x, y, z] in σ), weights (amplitude moduli), cutoff_a (σ), lambda
    /// (1/σ) and n.
    Superposition {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Self-gravitating scaling table (CSV).
    ///
    /// Boson columns: n, beta_star, energy, chi, omega, product.
    /// Fermion columns: n, gamma_star, f_factor, energy, chi.
    Selfgrav {
        #[arg(long, value_enum)]
        kind: Statistics,
        /// Comma-separated particle numbers; defaults to n_list in the config.
        #[arg(long = "N-list", value_delimiter = ',')]
        n_list: Option<Vec<f64>>,
    },
    /// Energy per particle along λ or d (CSV).
    ///
    /// Columns: lambda, d, kinetic, potential, total (ε) and
    /// total_cal_per_mole.
    Sweep {
        #[arg(long, value_enum)]
        param: SweepParam,
        /// start:stop:count, inclusive.
        #[arg(long)]
        range: String,
        /// Value of the other parameter; defaults to lambda0 or d0.
        #[arg(long)]
        fixed: Option<f64>,
        /// For a d sweep, minimize over λ at every spacing.
        #[arg(long)]
        relax: bool,
    },
    /// Run the oracle cross-checks (CSV).
    ///
    /// Columns: check, observed, expected, metric, deviation, tolerance,
    /// status, seed (Monte Carlo checks only). Exits with status 3 if any
    /// check fails.
    Verify,
}

/// Executes a parsed command line and writes its result.
pub fn run(cli: &Cli) -> CliResult<()> {
    let cfg = RunConfig::load(cli.config.as_deref())?;
    let (body, failure) = execute(&cfg, &cli.command)?;
    emit(cli.output.as_deref(), &body)?;
    failure.map_or(Ok(()), Err)
}

/// Returns the rendered output and, for `verify`, the failure to report
/// after the output has been written.
pub fn execute(cfg: &RunConfig, command: &Command) -> CliResult<(String, Option<CliError>)> {
    let body = match command {
        Command::Optimize => output::to_json(&commands::optimize(cfg)?)?,
        Command::Observables { lambda, n, velocity, time } => {
            let v = match velocity.as_deref() {
                None => None,
                Some(&[x, y, z]) => Some([x, y, z]),
                Some(other) => {
                    return Err(CliError::Input(format!("velocity needs three components, got {}", other.len())))
                }
            };
            output::to_json(&commands::observables(cfg, *lambda, *n, v, *time)?)?
        }
        Command::Superposition { spec } => output::to_json(&commands::superposition_from_file(spec)?)?,
        Command::Selfgrav { kind, n_list } => {
            commands::selfgrav(cfg, *kind, n_list.as_deref().unwrap_or(&cfg.n_list))?.to_csv()?
        }
        Command::Sweep { param, range, fixed, relax } => {
            let values = commands::parse_range(range)?;
            commands::sweep(cfg, *param, &values, *fixed, *relax)?.to_csv()?
        }
        Command::Verify => {
            let checks = verify::run_checks(cfg)?;
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            let body = verify::render(&checks).to_csv()?;
            let failure = (!failed.is_empty()).then(|| CliError::Verification(failed.join(", ")));
            return Ok((body, failure));
        }
    };
    Ok((body, None))
}

fn emit(path: Option<&Path>, body: &str) -> CliResult<()> {
    match path {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| CliError::Input(format!("cannot write output {}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Input(format!("cannot write to stdout: {e}")))
        }
    }
}
