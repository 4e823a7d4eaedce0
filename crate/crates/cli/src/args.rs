use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

/// Fusion rules, Bratteli diagrams and K-theory of fixed-point Cuntz algebras.
#[derive(Debug, Parser)]
#[command(name = "fusionk", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Backend: su2, su<N>, u1, trivial:<d> or table:<path>.
    #[arg(long, global = true, default_value = "su2")]
    pub backend: String,

    /// Representation, e.g. "(1)", "(0)+(2)", "2.(1,1)".
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,

    /// Level budget for searches and towers.
    #[arg(long, global = true, env = "FUSIONK_MAX_LEVEL", default_value_t = 8)]
    pub max_level: usize,

    /// Replace α by α^M, M the rebase exponent, before computing K-theory.
    #[arg(long, global = true)]
    pub auto_rebase: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tensor powers α^0 … α^L.
    Decompose {
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Conditions C1–C3, chain group and rebase exponent.
    Check,
    /// Bratteli diagram of the AF core.
    Bratteli {
        #[arg(long)]
        levels: Option<usize>,
    },
    /// K0/K1 of the fixed-point algebra.
    Ktheory,
    /// Ingest and validate a fusion table.
    Validate {
        /// Table file; defaults to the path of a table:<path> backend.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Check that a label mapping is an isomorphism of fusion rules.
    Isocheck {
        /// Target backend of the mapping.
        #[arg(long)]
        other: String,
        /// JSON object from labels of --backend to labels of --other.
        #[arg(long)]
        mapping: PathBuf,
        /// Number of source labels to check.
        #[arg(long)]
        budget: Option<usize>,
    },
}
