use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "coxtet", version, about = "Coxeter decompositions of hyperbolic tetrahedra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Largest Coxeter label k (angle π/k) tried by the enumerator.
    #[arg(long, global = true, default_value_t = 6)]
    pub max_label: u32,

    /// Tile bound of the gluing search.
    #[arg(long, global = true, default_value_t = 64)]
    pub max_tiles: usize,

    /// Eigenvalue tolerance for Gram signatures.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol_signature: f64,

    /// Tolerance for volume bounds and integer volume ratios.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol_volume: f64,

    /// Output file, or a directory that receives `<command>.<ext>`. Standard output if absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Output format. Defaults to the extension of --out, else md.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for the sample points of the certification.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,

    /// Sample points per tile during certification.
    #[arg(long, global = true, default_value_t = 16)]
    pub samples: usize,

    /// Shuffle the gluing frontier with this seed. Bypasses the cache.
    #[arg(long, global = true)]
    pub shuffle_seed: Option<u64>,

    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand, Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// List the hyperbolic Coxeter tetrahedra.
    Enumerate,
    /// Volumes and integral volume ratios.
    Volumes,
    /// First type decompositions with one fundamental tetrahedron.
    Search {
        /// Catalog id (H10), diagram ([3,3,6] or 03:3,12:6,23:3), catalog key or seed key.
        #[arg(long)]
        fundamental: String,
    },
    /// Filter pipeline and verification for second type decompositions.
    SecondType,
    /// Certify every decomposition geometrically and check the type of each.
    Certify {
        /// Restrict to one fundamental.
        #[arg(long)]
        fundamental: Option<String>,
    },
    /// Full report: catalog, first type tables, second type, verification appendix.
    Report,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Enumerate => "enumerate",
            Command::Volumes => "volumes",
            Command::Search { .. } => "search",
            Command::SecondType => "second-type",
            Command::Certify { .. } => "certify",
            Command::Report => "report",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Md,
    Dot,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Md => "md",
            Format::Dot => "dot",
        }
    }

    pub fn from_extension(ext: &str) -> Option<Format> {
        match ext {
            "json" => Some(Format::Json),
            "md" => Some(Format::Md),
            "dot" | "gv" => Some(Format::Dot),
            _ => None,
        }
    }
}
