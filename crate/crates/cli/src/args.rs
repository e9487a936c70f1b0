use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperff_core::decompose::{ClusteringMode, DEFAULT_MAX_EDGE_SIZE};
use hyperff_core::ingest::Format;
use hyperff_core::patterns::DiameterConfig;
use hyperff_core::spectral::{DEFAULT_TOLERANCE, DEFAULT_TOP_K};
use hyperff_core::temporal::DEFAULT_CHECKPOINTS;
use serde::Serialize;

/// Seed used when `--seed` is not given; every run is reproducible by default.
pub const DEFAULT_SEED: u64 = 2020;

#[derive(Debug, Parser)]
#[command(name = "hyperff", version, about = "Hypergraph forest-fire generation and pattern mining")]
pub struct Cli {
    /// Worker threads for parallel analysis stages (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow a hypergraph with the forest-fire model and write it in native format.
    Generate(GenerateArgs),
    /// Randomize hyperedge membership over nodes seen so far, preserving sizes and timestamps.
    Nullmodel(NullModelArgs),
    /// Degree, size, intersection, singular-value and diameter statistics.
    Analyze(AnalyzeArgs),
    /// Fit heavy-tailed candidates to a `value,count` (or `rank,sigma`) CSV.
    Fit(FitArgs),
    /// n-level decomposed graphs and their statistics.
    Decompose(DecomposeArgs),
    /// Statistics over growing prefixes plus log-log slopes.
    Evolve(EvolveArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    /// `timestamp node node ...` per line.
    Native,
    /// `<prefix>-nverts.txt`, `-simplices.txt`, `-times.txt`.
    Triple,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Native => Format::Native,
            FormatArg::Triple => Format::Triple,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct InputArgs {
    /// Native file, or triple-format prefix/directory.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value = "native")]
    pub format: FormatArg,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DiameterArgs {
    /// Distance quantile defining the effective diameter.
    #[arg(long, default_value_t = 0.9)]
    pub quantile: f64,

    /// Use every active node as a BFS source up to this many active nodes.
    #[arg(long, default_value_t = 2_000)]
    pub exact_threshold: usize,

    /// BFS sources sampled above the exact threshold.
    #[arg(long, default_value_t = 1_000)]
    pub sample_sources: usize,
}

impl DiameterArgs {
    pub fn config(&self, seed: u64) -> DiameterConfig {
        DiameterConfig {
            quantile: self.quantile,
            exact_threshold: self.exact_threshold,
            sample_sources: self.sample_sources,
            seed,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SpectralArgs {
    /// Number of leading singular values.
    #[arg(long, default_value_t = DEFAULT_TOP_K)]
    pub top_k: usize,

    /// Relative residual tolerance of the iterative solver.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenerateArgs {
    /// Number of nodes T.
    #[arg(long)]
    pub nodes: usize,

    /// Burning probability p of the first fire.
    #[arg(long, default_value_t = 0.51)]
    pub burn: f64,

    /// Expanding probability q of the second fire.
    #[arg(long, default_value_t = 0.2)]
    pub expand: f64,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output file (default: `$HYPERFF_OUT_DIR/hyperff.txt`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct NullModelArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output file (default: `$HYPERFF_OUT_DIR/null_model.txt`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Degree,
    Size,
    Intersection,
    Svd,
    Diameter,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_enum, value_delimiter = ',', default_value = "degree,size,intersection,svd,diameter")]
    pub metrics: Vec<Metric>,

    /// Also write a `<metric>_fit.csv` table for each distribution metric.
    #[arg(long)]
    pub fit: bool,

    #[command(flatten)]
    pub spectral: SpectralArgs,

    #[command(flatten)]
    pub diameter: DiameterArgs,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    /// Output directory (default: `$HYPERFF_OUT_DIR` or `hyperff-out`).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FitArgs {
    /// CSV with `value,count` rows, or `rank,sigma` rows (one sample per row).
    #[arg(long)]
    pub input: PathBuf,

    /// Integer-valued data (degrees, sizes, intersections); the default.
    #[arg(long, conflicts_with = "continuous")]
    pub discrete: bool,

    /// Real-valued data (singular values).
    #[arg(long)]
    pub continuous: bool,

    /// Fixed lower cutoff; chosen by the power-law KS scan when omitted.
    #[arg(long)]
    pub xmin: Option<f64>,

    /// Output file (default: `$HYPERFF_OUT_DIR/fit.csv`).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusteringArg {
    /// Mean of local coefficients, degree < 2 counted as 0.
    #[value(name = "avg_local")]
    AvgLocal,
    /// Transitivity: 3 x triangles / connected triples.
    Global,
}

impl From<ClusteringArg> for ClusteringMode {
    fn from(c: ClusteringArg) -> Self {
        match c {
            ClusteringArg::AvgLocal => ClusteringMode::AvgLocal,
            ClusteringArg::Global => ClusteringMode::Global,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4")]
    pub levels: Vec<usize>,

    /// Hyperedges larger than this are dropped before decomposing.
    #[arg(long, default_value_t = DEFAULT_MAX_EDGE_SIZE)]
    pub max_edge_size: usize,

    #[arg(long, value_enum, default_value = "avg_local")]
    pub clustering: ClusteringArg,

    #[command(flatten)]
    pub spectral: SpectralArgs,

    #[command(flatten)]
    pub diameter: DiameterArgs,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvolveArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Number of log-spaced checkpoints (before deduplication).
    #[arg(long, default_value_t = DEFAULT_CHECKPOINTS)]
    pub checkpoints: usize,

    /// Place checkpoints on an even timestamp grid instead of record counts.
    #[arg(long)]
    pub by_time: bool,

    /// Skip the per-checkpoint effective diameter.
    #[arg(long)]
    pub no_diameter: bool,

    #[command(flatten)]
    pub diameter: DiameterArgs,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}
