//! Command-line workbench over the hyperorbit library: curve enumeration
//! statistics, finite-field orbit censuses, distinguished and nilpotent
//! orbit construction, p-adic factor shapes, descent certificates, Chabauty
//! bounds and local mass tables.

mod cache;
mod commands;
mod report;

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use hyperorbit::error::{CurveError, DescentError, FiniteError, OrbitError, PadicError};

#[derive(Parser)]
#[command(name = "hyperorbit", version, about)]
struct Cli {
    /// Worker threads for parallel phases (default: all cores)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the report to this path instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for curve caches (JSON-lines, validated on load)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Report format
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate curves by height with component and congruence statistics
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: u64,
    },
    /// Census of the fiber over one polynomial (or all separable ones)
    Ffcount {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
        /// comma-separated invariants c_2,...,c_(2n+1) mod p
        #[arg(long)]
        poly: Option<String>,
    },
    /// Aggregate finite-field counting identities at (n, p)
    Ffcensus {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: u64,
    },
    /// Distinguished or nilpotent orbit construction
    Orbit {
        /// comma-separated integer invariants c_2,...,c_(2n+1)
        #[arg(long, conflicts_with = "nilpotent")]
        poly: Option<String>,
        /// "regular" or "subregular"
        #[arg(long, value_parser = ["regular", "subregular"])]
        nilpotent: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// scale for the subregular representative
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// p-adic analyses
    #[command(subcommand)]
    Padic(PadicCommand),
    /// Divisor-to-orbit descent pipeline
    #[command(subcommand)]
    Descent(DescentCommand),
    /// Batch Chabauty bounds over the mod-3 filtered family
    Chabauty {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: u64,
    },
    /// Local mass ratios and their product over all places
    Localmass {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: u64,
    },
    /// Weight identities and the combinatorial cusp inequality
    Lemmacheck {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum PadicCommand {
    /// Factorization shape of f over Q_p
    Shape {
        #[arg(long)]
        p: u64,
        /// comma-separated integer invariants c_2,...,c_(2n+1)
        #[arg(long)]
        poly: String,
        #[arg(long)]
        prec: Option<usize>,
    },
    /// 3-adic Chabauty bound for one curve
    Chabauty {
        /// comma-separated integer invariants c_2,...,c_(2n+1)
        #[arg(long)]
        curve: String,
        #[arg(long)]
        terms: Option<usize>,
    },
}

#[derive(Subcommand)]
enum DescentCommand {
    /// Integral orbit for one curve and divisor at an odd prime
    Orbit {
        /// comma-separated integer invariants c_2,...,c_(2n+1)
        #[arg(long)]
        curve: String,
        /// points as "(a,b);(a,b)"
        #[arg(long)]
        points: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 6)]
        prec: usize,
    },
    /// Certificates for a JSON file of curves with integral points
    Batch {
        #[arg(long)]
        file: PathBuf,
        /// odd primes for the p-adic normalization check
        #[arg(long, default_value = "5,7")]
        p: String,
        #[arg(long, default_value_t = 6)]
        prec: usize,
    },
    /// Exhaustive local ideal census for one curve and divisor
    Census {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        points: String,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        bound: Option<usize>,
    },
}

/// Exit codes: 0 success, 2 validation error, 3 infeasible parameters,
/// 4 unsupported input (documented narrowing).
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self::new(2, message)
    }

    pub fn infeasible(message: impl Into<String>) -> Self {
        Self::new(3, message)
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        Self::new(4, message)
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        CliError::validation(e.to_string())
    }
}

impl From<OrbitError> for CliError {
    fn from(e: OrbitError) -> Self {
        CliError::validation(e.to_string())
    }
}

impl From<FiniteError> for CliError {
    fn from(e: FiniteError) -> Self {
        match e {
            FiniteError::Infeasible(_) => CliError::infeasible(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<PadicError> for CliError {
    fn from(e: PadicError) -> Self {
        match e {
            PadicError::EvenPrime
            | PadicError::UnsupportedRamification
            | PadicError::RamifiedAtTwo => CliError::unsupported(e.to_string()),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<DescentError> for CliError {
    fn from(e: DescentError) -> Self {
        match e {
            DescentError::NonIntegralR | DescentError::WeierstrassPoint => {
                CliError::unsupported(e.to_string())
            }
            DescentError::CensusInfeasible(_) => CliError::infeasible(e.to_string()),
            DescentError::Padic(p) => p.into(),
            _ => CliError::validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::validation(format!("i/o error: {}", e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: cannot configure {} workers: {}", workers, e);
            return ExitCode::from(2);
        }
    }
    let started = std::time::Instant::now();
    let result = dispatch(&cli);
    match result {
        Ok(report) => {
            let rendered = match cli.format.as_str() {
                "csv" => report.to_csv(),
                _ => report.to_json(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, rendered.as_bytes()) {
                    eprintln!("error: cannot write {}: {}", path.display(), e);
                    return ExitCode::from(2);
                }
            } else {
                println!("{}", rendered);
            }
            eprintln!(
                "{}: done in {} ms",
                report.experiment,
                started.elapsed().as_millis()
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn dispatch(cli: &Cli) -> Result<report::StatReport, CliError> {
    match &cli.command {
        Command::Enumerate { n, x } => commands::run_enumerate(*n, *x, cli.cache_dir.as_deref()),
        Command::Ffcount { n, p, poly } => commands::run_ffcount(*n, *p, poly.as_deref()),
        Command::Ffcensus { n, p } => commands::run_ffcensus(*n, *p),
        Command::Orbit {
            poly,
            nilpotent,
            n,
            d,
        } => commands::run_orbit(poly.as_deref(), nilpotent.as_deref(), *n, *d),
        Command::Padic(PadicCommand::Shape { p, poly, prec }) => {
            commands::run_padic_shape(*p, poly, *prec)
        }
        Command::Padic(PadicCommand::Chabauty { curve, terms }) => {
            commands::run_padic_chabauty(curve, *terms)
        }
        Command::Descent(DescentCommand::Orbit {
            curve,
            points,
            p,
            prec,
        }) => commands::run_descent_orbit(curve, points, *p, *prec),
        Command::Descent(DescentCommand::Batch { file, p, prec }) => {
            commands::run_descent_batch(file, p, *prec)
        }
        Command::Descent(DescentCommand::Census {
            curve,
            points,
            p,
            bound,
        }) => commands::run_descent_census(curve, points, *p, *bound),
        Command::Chabauty { n, x } => commands::run_chabauty(*n, *x, cli.cache_dir.as_deref()),
        Command::Localmass { n, x } => commands::run_localmass(*n, *x, cli.cache_dir.as_deref()),
        Command::Lemmacheck { n } => commands::run_lemmacheck(*n),
    }
}
