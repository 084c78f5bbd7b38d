use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hsx_core::{DEFAULT_FACE_BUDGET, DEFAULT_ORACLE_CAP, EIGEN_TOL};

#[derive(Debug, Parser)]
#[command(
    name = "hsx",
    version,
    about = "Walks, spectra and sparse cuts of k-uniform hypergraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalOpts {
    /// Maximum number of faces in an induced complex
    #[arg(long, global = true, env = "HSX_FACE_BUDGET", default_value_t = DEFAULT_FACE_BUDGET)]
    pub face_budget: usize,

    /// Maximum vertex count for the brute-force conductance oracle
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP)]
    pub oracle_cap: usize,

    /// Tolerance for eigenvalue comparisons
    #[arg(long, global = true, default_value_t = EIGEN_TOL)]
    pub tol_eig: f64,

    /// Write the JSON output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a construction as a hypergraph file
    #[command(subcommand)]
    Gen(Family),
    /// Spectra of a walk and its graph
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = WalkKind::Updown)]
        walk: WalkKind,
        /// Levels as `m,l`
        #[arg(long, value_parser = parse_levels, default_value = "1,2")]
        levels: (usize, usize),
        /// Also report the threshold rank at this τ
        #[arg(long, allow_hyphen_values = true)]
        tau: Option<f64>,
    },
    /// Spectral sparse cut with its certificate
    SparseCut {
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Link expansion of the induced complex
    LinkExpansion { input: PathBuf },
    /// Decide (τ, r)-splittability
    Splittability {
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        tau: f64,
        #[arg(long)]
        r: usize,
    },
    /// Check the claims made about a construction
    #[command(subcommand)]
    Verify(Family),
    /// Exact minimum conductance by subset enumeration
    Oracle { input: PathBuf },
}

#[derive(Debug, Clone, Copy, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum Family {
    /// r petals of k−1 vertices around vertex 0
    Sunflower {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
    },
    /// All k-subsets of an n-set plus an n-cycle joined to k−2 tail vertices
    CycleLink {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WalkKind {
    Updown,
    Swap,
}

fn parse_levels(s: &str) -> Result<(usize, usize), String> {
    let (m, l) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `m,l`, got `{s}`"))?;
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|e| format!("bad level `{x}`: {e}"))
    };
    Ok((parse(m)?, parse(l)?))
}
