mod commands;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "asp", version, about = "Almost simplicial polytopes: constructions and checks")]
struct Cli {
    /// Lift the default size caps (n <= 16, d <= 6).
    #[arg(long, global = true)]
    unsafe_large: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build C(d,n,s) or S(d,n,s) and write its files.
    Construct {
        kind: Kind,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Facets of a point configuration by exact hull enumeration.
    Facets {
        #[command(flatten)]
        source: PointSource,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Gale-evenness facet list of C(d,n,s).
    Gale {
        #[command(subcommand)]
        cmd: GaleCmd,
    },
    /// Run checks against constructed files.
    Verify {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        points: Option<PathBuf>,
        /// Summary file whose "f" replaces the f-vector measured from the complex.
        #[arg(long)]
        summary: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        checks: Vec<Check>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One row per (d,n,s) of a parameter grid.
    Table {
        /// Range such as 3..4 or a single value.
        #[arg(long)]
        d: String,
        #[arg(long)]
        s: String,
        /// n - d - s, as a range.
        #[arg(long, default_value = "1..3")]
        n_offset: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generic rigidity of a graph.
    Rigidity {
        #[command(subcommand)]
        cmd: RigidityCmd,
    },
    /// Line shelling of conv(C(d,n,s) + y) for a point y beyond F.
    Shelling {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Shell st(y) then st(v) first and report the key-lemma defects.
        #[arg(long)]
        v: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimizer recognition for an ASP complex file.
    Recognize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stacking constructions.
    Stackgen {
        #[command(subcommand)]
        cmd: StackgenCmd,
    },
}

#[derive(Subcommand)]
enum GaleCmd {
    Facets {
        #[command(flatten)]
        params: ParamArgs,
        /// List the Gale-even d-subsets inside F instead.
        #[arg(long)]
        interior_tuples: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum RigidityCmd {
    Report {
        /// Graph, ASP complex or simplicial complex JSON.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum StackgenCmd {
    /// S(d,n,s), optionally followed by H-stackings.
    Build {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Extra random stack/H-stack moves after the base construction.
        #[arg(long, default_value_t = 0)]
        moves: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Recognize {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    s: usize,
}

#[derive(Args)]
#[group(required = true, multiple = true)]
struct PointSource {
    /// PointConfig JSON.
    #[arg(long, conflicts_with_all = ["d", "n", "s"])]
    input: Option<PathBuf>,
    #[arg(long, requires_all = ["n", "s"])]
    d: Option<usize>,
    #[arg(long, requires_all = ["d", "s"])]
    n: Option<usize>,
    #[arg(long, requires_all = ["d", "n"])]
    s: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    CyclicAsp,
    StackedAsp,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, ValueEnum)]
pub enum Check {
    Bounds,
    Ds,
    Gale,
    Ridge,
    Shelling,
    Rigidity,
    Minimizer,
    All,
}

/// Failure classes mapped onto exit codes.
pub enum Failure {
    /// A check ran and failed.
    Check,
    /// Bad input, refused caps or an internal error.
    Usage(anyhow::Error),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = commands::Caps::from_env(cli.unsafe_large);
    match commands::run(cli.command, &caps) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
