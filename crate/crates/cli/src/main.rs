//! Command-line front end for the `ncreal` crate.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ncreal", version, about = "Exact realizations of noncommutative rational functions")]
pub struct Cli {
    #[command(flatten)]
    pub run: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Seed for every random choice
    #[arg(long, global = true, env = "NCREAL_SEED", default_value_t = 1)]
    pub seed: u64,
    /// Number of random trials
    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,
    /// Sampled entries are integers in [-bound, bound]
    #[arg(long, global = true, default_value_t = 2)]
    pub bound: i64,
    /// Matrix levels to sample, comma separated
    #[arg(long, global = true, value_delimiter = ',', default_value = "1,2,3")]
    pub levels: Vec<usize>,
    /// Worker threads for independent trials
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// A function given either as an expression or as a realization file.
#[derive(Args, Debug, Clone)]
pub struct Source {
    /// Expression such as "(x1*x2 - x2*x1)^-1"
    #[arg(long, conflicts_with = "realization")]
    pub expr: Option<String>,
    /// Realization JSON file
    #[arg(long)]
    pub realization: Option<PathBuf>,
    /// Centre JSON file; with --expr, the expression is compiled there
    #[arg(long, requires = "expr")]
    pub centre: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression or realization at a point
    Eval {
        #[command(flatten)]
        source: Source,
        /// Point JSON file: an array of square matrices
        #[arg(long)]
        point: PathBuf,
    },
    /// Compile an expression into a realization centred at a point
    Realize {
        #[arg(long)]
        expr: String,
        #[arg(long)]
        centre: PathBuf,
        /// Skip minimization
        #[arg(long)]
        no_minimize: bool,
    },
    /// Minimize a realization
    Minimize {
        #[arg(long)]
        realization: PathBuf,
    },
    /// Find the similarity between two realizations
    Similar {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    /// Check the linearized lost-abbey equations
    CheckLla {
        #[arg(long)]
        realization: PathBuf,
        /// Also run the randomized rectangular check at block levels n,m
        #[arg(long, value_delimiter = ',', num_args = 2)]
        extended: Option<Vec<usize>>,
    },
    /// Decide whether a point lies in the domain
    Domain {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        point: PathBuf,
    },
    /// Taylor–Taylor coefficient, or the series sum at a nilpotent point
    Taylor {
        #[command(flatten)]
        source: Source,
        /// Word such as g1g2 (e for the empty word)
        #[arg(long, requires = "dirs")]
        word: Option<String>,
        /// JSON array of coefficient arguments, one per letter
        #[arg(long)]
        dirs: Option<PathBuf>,
        /// Point at which to sum the series
        #[arg(long, conflicts_with = "word")]
        point: Option<PathBuf>,
    },
    /// Difference-differential operator by block evaluation
    Derive {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        word: String,
        /// JSON array of |word| + 1 points
        #[arg(long)]
        points: PathBuf,
        /// JSON array of |word| direction matrices
        #[arg(long)]
        dirs: PathBuf,
    },
    /// Sample two expressions for a counterexample to equivalence
    Equiv {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Run the seeded invariant suite
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
