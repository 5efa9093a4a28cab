mod commands;
mod report;
mod source;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::Report;

#[derive(Parser, Debug)]
#[command(name = "fanolab", version, about = "Exact checks on cyclic cubic fourfolds and their Fano varieties of lines")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify a germ given as text, or the singularity at p of an instance.
    Classify {
        #[arg(long, conflicts_with_all = ["instance", "i"])]
        poly: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Sample or load an instance and run the surface-germ pipeline.
    Gamma {
        #[command(flatten)]
        common: Common,
    },
    /// Search for planes through p over small prime fields.
    PlaneCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Check that residual lines commute with x5 -> zeta x5.
    Equivariance {
        /// Number of random point pairs and tangent directions.
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Ranks, determinants and discriminant groups of the lattices T_i and R_i.
    LatticeTable {
        #[command(flatten)]
        common: Common,
    },
    /// The singularities of the surface of lines through a point of each simple type.
    Wall {
        /// Largest n checked on the infinite rows.
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Every check on every instance of a corpus directory (or one instance).
    ReportAll {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Instance file with f2, f3 and the claimed type.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    /// Sample an instance with an A_i point (2, 3 or 4).
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..=4))]
    pub i: Option<u32>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub seed: u64,
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub jet_order: u32,
    /// Comma-separated primes, each at most 13.
    #[arg(long, value_delimiter = ',', default_value = "5,7", value_parser = parse_prime)]
    pub primes: Vec<u32>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    #[serde(skip)]
    pub format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default)]
pub enum Format {
    #[default]
    Json,
    Md,
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.trim().parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if p > 13 || p < 2 || (2..p).any(|d| p % d == 0) {
        return Err(format!("{p} is not a prime at most 13"));
    }
    Ok(p)
}

/// Failures of input or usage; mathematical failures are carried in the report.
#[derive(Debug)]
pub struct InputError(pub String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn init_threads() {
    if let Ok(v) = std::env::var("FANOLAB_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => eprintln!("ignoring FANOLAB_THREADS={v}"),
        }
    }
}

fn run(cmd: &Command) -> Result<(Report, Format), InputError> {
    Ok(match cmd {
        Command::Classify { poly, common } => (commands::classify(poly.as_deref(), common)?, common.format),
        Command::Gamma { common } => (commands::gamma(common)?, common.format),
        Command::PlaneCheck { common } => (commands::plane_check(common)?, common.format),
        Command::Equivariance { count, common } => (commands::equivariance(*count, common)?, common.format),
        Command::LatticeTable { common } => (commands::lattice_table(common)?, common.format),
        Command::Wall { max_n, common } => (commands::wall(*max_n)?, common.format),
        Command::ReportAll { corpus, count, common } => {
            (commands::report_all(corpus.as_deref(), *count, common)?, common.format)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(&cli.command) {
        Ok((report, format)) => {
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Md => print!("{}", report.to_markdown()),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
