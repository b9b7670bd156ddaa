//! Command-line front end for `padic-cf`: argument parsing, JSON file
//! formats and report rendering.

pub mod commands;
pub mod error;
pub mod formats;
pub mod parallel;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use commands::run;
pub use error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "padic-cf", version, about = "Exact p-adic continued fractions and word-combinatorics evidence")]
pub struct Cli {
    /// Output format. `word` defaults to text, everything else to json.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct FloorArgs {
    /// The prime. Optional when --floor names a JSON file, which carries its own.
    #[arg(long)]
    pub p: Option<u64>,
    /// `ruban`, `browkin`, or a path to a floor-function JSON file.
    #[arg(long, default_value = "ruban")]
    pub floor: String,
}

#[derive(Debug, Args)]
pub struct WordArgs {
    /// Builtin generator: thue_morse, rudin_shapiro, paperfolding, fibonacci, sturmian.
    #[arg(long = "gen", conflicts_with = "word")]
    pub generator: Option<String>,
    /// Path to a word-spec JSON file.
    #[arg(long)]
    pub word: Option<PathBuf>,
    /// Alphabet map for --gen, e.g. `a=8/3,b=5/3`.
    #[arg(long, allow_hyphen_values = true)]
    pub alphabet: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a rational under a floor function.
    Expand {
        #[command(flatten)]
        floor: FloorArgs,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value_t = 30)]
        max_terms: usize,
    },
    /// Evaluate a finite continued fraction `[a_0, a_1, ...]`.
    Eval {
        /// Comma-separated partial quotients.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// With --alpha, also report v_p(alpha - value).
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, allow_hyphen_values = true, requires = "p")]
        alpha: Option<String>,
    },
    /// Print a prefix of a word.
    Word {
        #[command(flatten)]
        source: WordArgs,
        #[arg(long)]
        length: usize,
    },
    /// Factor complexity of a prefix for n = 1..=max-n.
    Complexity {
        #[command(flatten)]
        source: WordArgs,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Repetition (spade) or mirror (club) witnesses on a prefix.
    Detect {
        #[command(flatten)]
        source: WordArgs,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value = "spade")]
        kind: String,
        #[arg(long, default_value = "2")]
        c_max: String,
        #[arg(long, default_value_t = 1)]
        min_witnesses: usize,
        /// Cap on the prefix length actually searched.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Quadratic polynomial of an eventually periodic expansion.
    Quadratic {
        #[arg(long)]
        p: u64,
        /// Comma-separated, starting with 0.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        preperiod: String,
        #[arg(long, allow_hyphen_values = true)]
        period: String,
        /// Truncation lengths for v_p(P(x_N)).
        #[arg(long, default_value = "8,16,32")]
        ladder: String,
    },
    /// Check the floor-function axioms on random samples.
    FloorValidate {
        #[command(flatten)]
        floor: FloorArgs,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        perturbations: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evidence certificate for the hypotheses of the transcendence criteria.
    Certify {
        #[command(flatten)]
        floor: FloorArgs,
        #[command(flatten)]
        source: WordArgs,
        #[arg(long)]
        length: usize,
        /// Condition hint; without it the detector picks one.
        #[arg(long)]
        kind: Option<String>,
        /// Constant for the hint (default 0).
        #[arg(long, requires = "kind")]
        c: Option<String>,
        #[arg(long)]
        budget: Option<usize>,
    },
}
