//! Command-line front end for the asymptotic singular value toolkit.
//!
//! Every run prints one JSON report on stdout. Exit codes: 0 success, 1 for
//! I/O or parse problems, 2 for numerical conditioning failures, 3 when a
//! verification check fails, 64 for usage errors.

mod commands;
mod format;
mod report;

use clap::{Parser, Subcommand};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or unparseable input (exit 1).
    Input(String),
    /// The computation failed for conditioning reasons (exit 2).
    Numeric(String),
    /// Bad flags or arguments (exit 64).
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "{m}"),
            CliError::Numeric(m) => write!(f, "{m}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Usage(_) => 64,
        }
    }
}

impl From<yamamoto_core::Error> for CliError {
    fn from(e: yamamoto_core::Error) -> Self {
        CliError::Numeric(format!("{e}"))
    }
}

/// Flags shared by every subcommand.
pub struct Globals {
    pub tol_cluster: Option<f64>,
    pub k: u32,
    pub mem_tol: f64,
    pub seed: u64,
    pub series: Option<std::path::PathBuf>,
    pub exp: bool,
    pub vectors: Option<std::path::PathBuf>,
}

#[derive(Parser)]
#[command(
    name = "yamamoto",
    version,
    about = "Asymptotic singular value analysis for complex matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Eigenvalue clustering tolerance; defaults to a norm-scaled value
    #[arg(long = "tol-cluster", global = true, value_name = "TOL")]
    tol_cluster: Option<f64>,

    /// Squaring depth: iterative limits use A^(2^K)
    #[arg(long = "K", default_value_t = 20, global = true, value_name = "K")]
    k: u32,

    /// Membership tolerance for shell classification
    #[arg(long = "mem-tol", default_value_t = 1e-6, global = true, value_name = "TOL")]
    mem_tol: f64,

    /// Seed for the randomized verification suite
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,

    /// Write the singular value convergence series as CSV to this path
    #[arg(long, global = true, value_name = "FILE")]
    series: Option<std::path::PathBuf>,

    /// Include the exponential-flow section in analyze reports
    #[arg(long, global = true)]
    exp: bool,

    /// JSON file listing vectors to classify
    #[arg(long, global = true, value_name = "FILE")]
    vectors: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: eigenvalues, clusters, flag, closed-form and iterated limits
    Analyze {
        /// Matrix file, JSON or plain text
        matrix: std::path::PathBuf,
    },
    /// Run the randomized inequality suite, optionally against a fixed matrix
    Verify {
        /// Optional matrix to run the deterministic checks on
        matrix: Option<std::path::PathBuf>,
        /// Largest instance dimension (the suite cycles 2..=DIM)
        #[arg(long, default_value_t = 8, value_name = "DIM")]
        dim: usize,
        /// Number of random instances
        #[arg(long, default_value_t = 200, value_name = "N")]
        instances: usize,
        /// Trace exponent for the fixed-matrix checks; must be positive
        #[arg(short = 'p', long = "p", value_name = "P")]
        p: Option<f64>,
        /// Force one failing check (test hook for the exit-code contract)
        #[arg(long, hide = true)]
        inject_violation: bool,
    },
    /// Classify the growth exponent of each vector in --vectors
    Growth {
        /// Matrix file, JSON or plain text
        matrix: std::path::PathBuf,
    },
    /// Exponential-flow limits and optional trajectory classification
    Exp {
        /// Matrix file, JSON or plain text
        matrix: std::path::PathBuf,
    },
}

fn dispatch(cli: Cli) -> Result<(report::AnalysisReport, i32), CliError> {
    let globals = Globals {
        tol_cluster: cli.tol_cluster,
        k: cli.k,
        mem_tol: cli.mem_tol,
        seed: cli.seed,
        series: cli.series,
        exp: cli.exp,
        vectors: cli.vectors,
    };
    if globals.k == 0 {
        return Err(CliError::Usage("--K must be at least 1".into()));
    }
    if !(globals.mem_tol > 0.0) || !globals.mem_tol.is_finite() {
        return Err(CliError::Usage("--mem-tol must be positive".into()));
    }
    match cli.command {
        Command::Analyze { matrix } => commands::cmd_analyze(&matrix, &globals),
        Command::Verify {
            matrix,
            dim,
            instances,
            p,
            inject_violation,
        } => commands::cmd_verify(
            &commands::VerifyOpts {
                matrix,
                dim,
                instances,
                p,
                inject_violation,
            },
            &globals,
        ),
        Command::Growth { matrix } => commands::cmd_growth(&matrix, &globals),
        Command::Exp { matrix } => commands::cmd_exp(&matrix, &globals),
    }
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            eprint!("{e}");
            return 64;
        }
    };
    match dispatch(cli) {
        Ok((report, code)) => match report::to_json(&report) {
            Ok(json) => {
                println!("{json}");
                code
            }
            Err(e) => {
                eprintln!("cannot serialize report: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

fn main() {
    std::process::exit(run());
}
