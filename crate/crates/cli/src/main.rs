//! Command-line front end: configuration-driven verification suites and
//! experiments over the spectral library, with machine-readable reports.
//!
//! Exit codes: 0 success, 2 configuration error, 3 precondition failure,
//! 4 non-convergence, 5 tolerance failure.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{load_or_default, load_required};

#[derive(Debug)]
pub enum CliError {
    /// Bad or missing configuration (exit 2).
    Config(String),
    /// A mathematical precondition failed, e.g. ellipticity (exit 3).
    Precondition(String),
    /// An iteration ran out of budget or diverged (exit 4).
    NonConvergence(String),
    /// A check ran fine but landed outside its tolerance (exit 5).
    Tolerance(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::NonConvergence(_) => 4,
            CliError::Tolerance(_) => 5,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Config(m)
            | CliError::Precondition(m)
            | CliError::NonConvergence(m)
            | CliError::Tolerance(m)
            | CliError::Io(m) => m,
        }
    }

    fn from_solwave(e: solwave::Error) -> Self {
        match e {
            solwave::Error::NotElliptic { .. } => CliError::Precondition(e.to_string()),
            solwave::Error::Diverged { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

/// Spectral multiplier toolkit: verify exact solitary-wave cases, solve
/// profile equations, and measure algebraic decay.
///
/// Thread count is controlled solely by the RAYON_NUM_THREADS environment
/// variable; no other environment configuration is read.
#[derive(Parser)]
#[command(name = "solwave", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// JSON configuration file; commands other than `solve` run with
    /// defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory for reports and CSV data.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Override the grid half-length from the config.
    #[arg(long = "grid-l")]
    grid_l: Option<f64>,
    /// Override the number of grid points per dimension.
    #[arg(long = "grid-n")]
    grid_n: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the exactly solvable catalog cases on a reference grid.
    VerifyExact(CommonArgs),
    /// Solve a profile equation by spectral iteration.
    Solve(CommonArgs),
    /// Weighted-norm boundedness verdicts and tail fit for a catalog case.
    DecayReport(CommonArgs),
    /// Residuals of the weight/derivative exchange identities and
    /// boundedness-probe families.
    CommutatorCheck(CommonArgs),
    /// Half-integer Bessel recurrence, symmetry, and closed-form checks.
    BesselCheck(CommonArgs),
    /// Classify a symbol by the global ellipticity estimate.
    Ellipticity(CommonArgs),
}

fn apply_grid_overrides(grid: &mut config::GridConfig, args: &CommonArgs) {
    if let Some(l) = args.grid_l {
        grid.half_length = l;
    }
    if let Some(n) = args.grid_n {
        grid.points_per_dim = n;
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::VerifyExact(args) => {
            let mut cfg: config::VerifyExactConfig = load_or_default(args.config.as_deref())?;
            apply_grid_overrides(&mut cfg.grid, &args);
            commands::cmd_verify_exact(cfg, &args.out)
        }
        Command::Solve(args) => {
            let mut cfg: config::SolveCommandConfig =
                load_required(args.config.as_deref(), "solve")?;
            apply_grid_overrides(&mut cfg.grid, &args);
            commands::cmd_solve(cfg, &args.out)
        }
        Command::DecayReport(args) => {
            let mut cfg: config::DecayReportConfig = load_or_default(args.config.as_deref())?;
            if let Some(l) = args.grid_l {
                cfg.lengths = (0..4).map(|i| l * f64::powi(2.0, i)).collect();
            }
            if let Some(n) = args.grid_n {
                cfg.points_for_first = n;
            }
            commands::cmd_decay_report(cfg, &args.out)
        }
        Command::CommutatorCheck(args) => {
            let mut cfg: config::CommutatorCheckConfig =
                load_or_default(args.config.as_deref())?;
            apply_grid_overrides(&mut cfg.grid, &args);
            commands::cmd_commutator_check(cfg, &args.out)
        }
        Command::BesselCheck(args) => {
            let cfg: config::BesselCheckConfig = load_or_default(args.config.as_deref())?;
            commands::cmd_bessel_check(cfg, &args.out)
        }
        Command::Ellipticity(args) => {
            let cfg: config::EllipticityConfig =
                load_required(args.config.as_deref(), "ellipticity")?;
            commands::cmd_ellipticity(cfg, &args.out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
