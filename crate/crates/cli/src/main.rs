mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "pef",
    version,
    about = "Certifying recognition and coloring of (pan, even hole)-free graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Dot,
    Svg,
}

#[derive(Args)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Re-check every payload, including a JSON round trip, before printing.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership; exit 0 free, 1 forbidden, 2 input error.
    Recognize {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Include the pan or even hole.
        #[arg(long)]
        witness: bool,
        /// Include the certificate tree.
        #[arg(long)]
        certificate: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Minimum coloring of a free graph.
    Color {
        path: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Tree decomposition of a free graph with width + 1 <= 1.5 omega.
    Treewidth {
        path: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Unit circular-arc models of the buoys of a free graph.
    Arcs {
        path: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Check an emitted artifact or report against a graph; exit 0 valid, 1 invalid, 2 unreadable.
    Verify { graph: PathBuf, artifact: PathBuf },
    /// Brute-force ground truth for small graphs.
    Oracle {
        #[arg(value_enum)]
        query: OracleQuery,
        path: PathBuf,
    },
    /// Generate a graph in the edge-list format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        /// Seed; falls back to PEF_SEED, then 0.
        #[arg(long, global = true)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
pub enum OracleQuery {
    EvenHole,
    Pan,
    Free,
    Chromatic,
    Clique,
}

#[derive(Subcommand, Clone, Copy)]
pub enum GenFamily {
    RandomGraph {
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
    },
    RandomBuoy {
        #[arg(long, default_value_t = 5)]
        ell: usize,
        #[arg(long, default_value_t = 3)]
        max_bag: usize,
    },
    FreeGraph {
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 9)]
        max_ell: usize,
        #[arg(long, default_value_t = 3)]
        max_bag: usize,
        #[arg(long, default_value_t = 2)]
        max_universal: usize,
    },
    NearMiss {
        #[arg(long, default_value_t = 3)]
        atoms: usize,
        #[arg(long, default_value_t = 9)]
        max_ell: usize,
        #[arg(long, default_value_t = 3)]
        max_bag: usize,
        #[arg(long, default_value_t = 2)]
        max_universal: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Recognize {
            paths,
            witness,
            certificate,
            out,
        } => commands::recognize(&paths, witness, certificate, &out),
        Command::Color { path, out } => commands::color(&path, &out),
        Command::Treewidth { path, out } => commands::treewidth(&path, &out),
        Command::Arcs { path, out } => commands::arcs(&path, &out),
        Command::Verify { graph, artifact } => commands::verify(&graph, &artifact),
        Command::Oracle { query, path } => commands::oracle(query, &path),
        Command::Gen { family, seed } => commands::gen(family, seed),
    };
    ExitCode::from(code)
}
