//! `gaudin`: batch verification of the Capelli identities and the
//! gl(m|n) / gl(k) duality.

mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gaudin_duality::AlgebraError;

#[derive(Parser)]
#[command(name = "gaudin", version, about = "Exact verification of Gaudin model identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check one identity and report per-slot results.
    Verify {
        #[arg(value_enum)]
        identity: Identity,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print coefficient tables.
    Dump {
        #[arg(value_enum)]
        what: DumpTarget,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    Duality,
    CapelliG,
    CapelliBhat,
    BerInvariance,
    Commutativity,
    ClassicalDuality,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum DumpTarget {
    Coeffs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Comma-separated rationals `p` or `p/q`; drawn from the seed if omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub z: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Option<Vec<String>>,
    /// Lowest certified power of the spectral variable.
    #[arg(long, allow_hyphen_values = true)]
    pub v_floor: Option<i64>,
    /// Lowest certified power of the spectral derivation.
    #[arg(long, allow_hyphen_values = true)]
    pub d_floor: Option<i64>,
    /// Highest certified power of w.
    #[arg(long)]
    pub w_top: Option<i64>,
    /// Orders below m - n compared by the duality check.
    #[arg(long, default_value_t = 6)]
    pub depth: i64,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Omit wall times so output is reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
}

/// Exit codes other than 0 (all passed) and 2 (usage error).
pub mod exit {
    pub const FAILED: u8 = 1;
    pub const INVALID_PARAMS: u8 = 3;
    pub const Z_NOT_DISTINCT: u8 = 4;
    pub const WINDOW_TOO_SHALLOW: u8 = 5;
    pub const COMPUTATION: u8 = 6;
}

fn error_code(e: &AlgebraError) -> u8 {
    match e {
        AlgebraError::NonDistinctZ => exit::Z_NOT_DISTINCT,
        AlgebraError::InvalidParams(_) | AlgebraError::Parse(_) | AlgebraError::Dimension(_) => exit::INVALID_PARAMS,
        AlgebraError::WindowTooShallow(_) => exit::WINDOW_TOO_SHALLOW,
        _ => exit::COMPUTATION,
    }
}

fn init_threads() {
    if let Some(n) = std::env::var("GAUDIN_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    let (result, format) = match &cli.command {
        Command::Verify { identity, run } => (commands::verify(*identity, run), run.format),
        Command::Dump { what: DumpTarget::Coeffs, run } => (commands::dump_coeffs(run), run.format),
    };
    match result {
        Ok(report) => {
            match format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("serializable report")),
                Format::Human => print!("{}", report.human()),
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(exit::FAILED)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
    }
}
