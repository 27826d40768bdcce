use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use redvar::report::{Report, Status};
use redvar::verify::{exit_code, Suite};
use redvar::Error;

mod commands;

#[derive(Parser, Debug)]
#[command(
    name = "redvar",
    version,
    about = "Exact computations on varieties of reductions of symmetric pairs"
)]
struct Cli {
    /// Output format on standard output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Node budget for root-set searches.
    #[arg(
        long,
        global = true,
        env = "REDVAR_BUDGET",
        default_value_t = 50_000_000
    )]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("pair").required(true).args(["square", "transpose"])))]
struct PairSpec {
    /// Cartesian square of sl<n>, so<n>, sp<n> or g2.
    #[arg(long)]
    square: Option<String>,
    /// The pair (sl_n, so_n) from the transpose involution.
    #[arg(long)]
    transpose: Option<usize>,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("space").required(true).args(["square", "transpose", "raw"])))]
#[command(group(ArgGroup::new("arc").args(["curve", "diagonal"])))]
struct DegenerateSpec {
    #[arg(long)]
    square: Option<String>,
    #[arg(long)]
    transpose: Option<usize>,
    /// Plain vector space Q^N; the arc is given by --diagonal.
    #[arg(long, value_name = "N")]
    raw: Option<usize>,
    /// Factors `element : exponent` separated by `;`, e.g.
    /// `1*e12@1 + 1*e12@2 : -1`. Omitted means the identity arc.
    #[arg(long)]
    curve: Option<String>,
    /// Exponents of a diagonal arc diag(t^e_1, ..., t^e_N) in raw mode.
    #[arg(long, value_name = "E1,E2,...")]
    diagonal: Option<String>,
    /// Spanning vectors separated by `;`: elements such as
    /// `1*h1@1 + -1*h1@2`, comma-separated coordinates in raw mode, or
    /// `cartan` for the Cartan subspace.
    #[arg(long)]
    plane: String,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("query").required(true).args(["coxeter_table", "malcev", "survivors", "orbits", "ctype"])))]
struct RootsSpec {
    /// Positive-root counts and Coxeter numbers against the printed table.
    #[arg(long)]
    coxeter_table: bool,
    /// Maximal abelian root sets of a type such as G2 or A3.
    #[arg(long, value_name = "TYPE")]
    malcev: Option<String>,
    /// Types with n/2 <= h + r - 1.
    #[arg(long)]
    survivors: bool,
    /// The orbit criterion r (m - r) > r - 2 up to rank 8.
    #[arg(long)]
    orbits: bool,
    /// Summary of one root system.
    #[arg(value_name = "TYPE")]
    ctype: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, rank, dim R and restricted roots of a pair.
    Pair(PairSpec),
    /// Limit of a plane under an arc, computed two ways.
    Degenerate(DegenerateSpec),
    /// Root-system tables and enumerations.
    Roots(RootsSpec),
    /// The verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run only the named check.
        #[arg(long)]
        check: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Fast => Suite::Fast,
            SuiteArg::Full => Suite::Full,
        }
    }
}

/// A failure with the stage it happened in.
pub struct StageError {
    pub stage: &'static str,
    pub error: Error,
}

pub trait Stage<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError>;
}

impl<T> Stage<T> for redvar::Result<T> {
    fn stage(self, stage: &'static str) -> Result<T, StageError> {
        self.map_err(|error| StageError { stage, error })
    }
}

fn error_exit(e: &StageError) -> u8 {
    match &e.error {
        Error::InvalidArgument(_) | Error::Unsupported(_) => 2,
        Error::InsufficientBudget { .. } | Error::SearchExhausted(_) => 3,
        _ => 1,
    }
}

fn emit(report: &Report, format: Format) {
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => {
            println!("{}", report.command);
            if let Some(p) = &report.pair {
                println!("pair: {p}");
            }
            for c in &report.checks {
                let s = match c.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::EvidenceOnly => "evidence-only",
                };
                println!("{s:>13}  {}", c.name);
                for n in &c.notes {
                    println!("{:>13}  note: {n}", "");
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Pair(spec) => commands::pair(spec),
        Command::Degenerate(spec) => commands::degenerate(spec),
        Command::Roots(spec) => commands::roots(spec, cli.budget),
        Command::Verify { suite, seed, check } => {
            commands::verify((*suite).into(), *seed, check.as_deref())
        }
    };
    match result {
        Ok(report) => {
            emit(&report, cli.format);
            ExitCode::from(exit_code(&report) as u8)
        }
        Err(e) => {
            eprintln!("redvar: stage {}: {}", e.stage, e.error);
            ExitCode::from(error_exit(&e))
        }
    }
}
