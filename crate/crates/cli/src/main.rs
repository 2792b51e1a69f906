mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Exact computations for 2-descent on Jacobians of plane quartics.
#[derive(Debug, Parser)]
#[command(name = "qdescent", version, about)]
struct Cli {
    /// Worker threads for internal parallelism; outputs do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Discriminant, its factorization, reduction flags and a bad-prime set.
    Disc { curve: PathBuf },
    /// The 28 bitangents over their splitting field modulo p.
    Bitangents {
        curve: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Syzygetic quadruples, canonical matching and Frobenius modulo p.
    Incidence {
        curve: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Frobenius cycle types at several primes and what they imply.
    Galois {
        curve: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// The canonical model of odd theta characteristics.
    Canonical {
        #[arg(long)]
        genus: u32,
    },
    /// First cohomology of a group with coefficients in a descent module.
    Cohom {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, value_enum)]
        module: ModuleName,
    },
    /// Point counts over F_p, F_p^2, F_p^3 and the L-polynomial.
    Count {
        curve: PathBuf,
        #[arg(long)]
        p: u64,
    },
    /// Upper bound on the rational torsion from reductions.
    Torsion {
        curve: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Fixed-point table, W_v, kappa and the rank bound.
    Table(TableArgs),
    /// Random search for a subgroup of given order.
    SearchSubgroup(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModuleName {
    #[value(name = "R")]
    R,
    #[value(name = "Rdual")]
    Rdual,
    #[value(name = "J2")]
    J2,
    #[value(name = "Edual")]
    Edual,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub curve: PathBuf,
    /// Group file for the global Galois group.
    #[arg(long)]
    pub global: PathBuf,
    /// `place:groupfile[:imC]`, where imC is the size of the local image.
    #[arg(long, value_delimiter = ',')]
    pub local: Vec<String>,
    /// Bound on the F_2-dimension of the fake Selmer group.
    #[arg(long, conflicts_with = "fake_from_local")]
    pub fake: Option<usize>,
    /// Bound the fake Selmer group by the sum of local image dimensions.
    #[arg(long)]
    pub fake_from_local: bool,
    /// Known dimension of the kernel of kappa.
    #[arg(long)]
    pub kappa_kernel: Option<usize>,
    /// Additional known 2-torsion dimension in J(Q)/2J(Q).
    #[arg(long, default_value_t = 0)]
    pub torsion_correction: usize,
    /// The rank is known to be a multiple of this.
    #[arg(long)]
    pub rank_multiple: Option<usize>,
    /// Assert the divisor-class surjectivity hypothesis.
    #[arg(long)]
    pub assume_circ: bool,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub order: u64,
    #[arg(long)]
    pub transitive: bool,
    /// Ambient group file; defaults to the genus-3 symplectic group on 28 labels.
    #[arg(long)]
    pub within: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub cap: u64,
}

/// A failure reported as a JSON object.
#[derive(Debug)]
pub enum Failure {
    /// Input that could not be read or parsed; exit status 2.
    Malformed { message: String, context: Value },
    /// A computation rejected its input; exit status 1.
    Module { error: qdescent::Error, context: Value },
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Malformed { .. } => 2,
            Failure::Module { .. } => 1,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Malformed { message, context } => json!({ "code": "malformed_input", "message": message, "context": context }),
            Failure::Module { error, context } => json!({ "code": error.code(), "message": error.to_string(), "context": context }),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

/// Attaches context to library errors.
pub trait Context<T> {
    fn ctx(self, context: Value) -> CliResult<T>;
}

impl<T> Context<T> for qdescent::Result<T> {
    fn ctx(self, context: Value) -> CliResult<T> {
        self.map_err(|error| Failure::Module { error, context })
    }
}

fn run(cli: &Cli) -> CliResult<Value> {
    match &cli.command {
        Command::Disc { curve } => commands::disc(curve),
        Command::Bitangents { curve, p } => commands::bitangents(curve, *p),
        Command::Incidence { curve, p } => commands::incidence(curve, *p),
        Command::Galois { curve, primes } => commands::galois(curve, primes),
        Command::Canonical { genus } => commands::canonical(*genus),
        Command::Cohom { group, module } => commands::cohom(group, *module),
        Command::Count { curve, p } => commands::count(curve, *p),
        Command::Torsion { curve, primes } => commands::torsion(curve, primes),
        Command::Table(args) => commands::table(args),
        Command::SearchSubgroup(args) => commands::search(args),
    }
}

fn emit(text: &str, output: Option<&PathBuf>) -> std::io::Result<()> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n")),
        None => writeln!(std::io::stdout().lock(), "{text}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("{}", json!({ "code": "malformed_input", "message": e.to_string(), "context": { "threads": n } }));
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(value) => {
            let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
            match emit(&text, cli.output.as_ref()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("{}", json!({ "code": "io", "message": e.to_string(), "context": { "output": cli.output } }));
                    ExitCode::from(1)
                }
            }
        }
        Err(failure) => {
            println!("{}", serde_json::to_string_pretty(&failure.to_json()).expect("JSON values serialize"));
            ExitCode::from(failure.exit_code())
        }
    }
}
