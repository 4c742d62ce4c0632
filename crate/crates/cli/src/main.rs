//! `casimir`: CSV data for Casimir pressures, Foucault modes and TE mode charts.

mod commands;
mod grid;
mod output;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use casimir_core::CasimirError;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::grid::Grid;

#[derive(Parser, Debug)]
#[command(name = "casimir", version, about = "Casimir pressure between plane Au and Ni mirrors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Setup {
    #[value(name = "au-au")]
    AuAu,
    #[value(name = "au-ni")]
    AuNi,
    #[value(name = "ni-ni")]
    NiNi,
}

impl Setup {
    pub fn name(self) -> &'static str {
        match self {
            Setup::AuAu => "au-au",
            Setup::AuNi => "au-ni",
            Setup::NiNi => "ni-ni",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Lifshitz,
    Matsubara,
    Both,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lifshitz => "lifshitz",
            Method::Matsubara => "matsubara",
            Method::Both => "both",
        }
    }
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, value_enum, default_value_t = Setup::AuAu)]
    pub setup: Setup,
    /// Mirror separation in nm.
    #[arg(long = "L-nm", default_value_t = 300.0)]
    pub l_nm: f64,
    /// Temperature in K.
    #[arg(long = "T-K", default_value_t = 300.0)]
    pub t_k: f64,
    /// Relative accuracy target.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pressure for one configuration.
    Pressure {
        #[command(flatten)]
        common: Common,
        /// Multiplier applied to both relaxation rates.
        #[arg(long, default_value_t = 1.0)]
        gamma_scale: f64,
        #[arg(long, value_enum, default_value_t = Method::Matsubara)]
        method: Method,
    },
    /// Pressure along a decreasing sequence of relaxation-rate scales.
    PressureScan {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_values_t = vec![1.0, 0.1, 0.01, 1e-3, 1e-4])]
        gamma_scales: Vec<f64>,
        #[arg(long, value_enum, default_value_t = Method::Matsubara)]
        method: Method,
        /// Append the lossless-limit rows (plasma sum, and limit plus Foucault part).
        #[arg(long)]
        plasma_point: bool,
    },
    /// Foucault-mode density as a function of the transverse wavevector.
    FoucaultK {
        #[command(flatten)]
        common: Common,
        /// Relaxation-rate scale; defaults to one well inside the small-gamma regime.
        #[arg(long)]
        gamma_scale: Option<f64>,
        /// Wavevectors in rad/m, `a,b,...` or `start:stop:count` (log-spaced).
        #[arg(long = "k-grid")]
        k_grid: Option<Grid>,
    },
    /// Foucault-mode pressure as a function of the separation.
    FoucaultL {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        gamma_scale: Option<f64>,
        /// Separations in nm, `a,b,...` or `start:stop:count` (log-spaced).
        #[arg(long = "L-grid-nm")]
        l_grid: Option<Grid>,
    },
    /// TE mode chart: K_z zeros, reflection zeros and winding numbers.
    Modes {
        #[command(flatten)]
        common: Common,
        /// Defaults to gamma = 1e-3 omega_m for cavities with a magnetic mirror, 1 otherwise.
        #[arg(long)]
        gamma_scale: Option<f64>,
        /// Wavevectors in units of the Ni critical wavevector.
        #[arg(long = "k-over-k0", value_delimiter = ',', default_values_t = vec![2.0])]
        k_over_k0: Vec<f64>,
    },
    /// Cross-engine and asymptotic self-checks; exits 1 on any violation.
    Validate {
        #[command(flatten)]
        common: Common,
    },
}

/// Failure classes, mapped onto exit codes.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Numerical(CasimirError),
    Violations(usize),
}

impl From<CasimirError> for Failure {
    fn from(e: CasimirError) -> Self {
        if e.is_invalid_input() {
            Failure::Input(e.to_string())
        } else {
            Failure::Numerical(e)
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Input(format!("cannot write output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Input(format!("cannot write output: {e}"))
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("CASIMIR_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("CASIMIR_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot size thread pool: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Pressure {
            common,
            gamma_scale,
            method,
        } => commands::pressure(&common, gamma_scale, method),
        Command::PressureScan {
            common,
            gamma_scales,
            method,
            plasma_point,
        } => commands::pressure_scan(&common, &gamma_scales, method, plasma_point),
        Command::FoucaultK {
            common,
            gamma_scale,
            k_grid,
        } => commands::foucault_k(&common, gamma_scale, k_grid),
        Command::FoucaultL {
            common,
            gamma_scale,
            l_grid,
        } => commands::foucault_l(&common, gamma_scale, l_grid),
        Command::Modes {
            common,
            gamma_scale,
            k_over_k0,
        } => commands::modes(&common, gamma_scale, &k_over_k0),
        Command::Validate { common } => validate::run(&common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("error [{}]: {e}", e.module());
            ExitCode::from(3)
        }
        Err(Failure::Violations(n)) => {
            eprintln!("validate: {n} check(s) failed");
            ExitCode::from(1)
        }
    }
}
