//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "scalestab",
    version,
    about = "Persistence diagrams of point clouds and their stability under per-axis scaling",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute persistence diagrams of a point cloud
    Diagram(DiagramArgs),
    /// Distance between two stored diagrams
    Distance(DistanceArgs),
    /// Perturbation bounds for a transform against a cloud or a diameter
    Bound(BoundArgs),
    /// Solve for scaling factors under a perturbation tolerance
    Optimize(OptimizeArgs),
    /// Measure diagram perturbation under a transform and check the bounds
    Verify(VerifyArgs),
    /// Seeded randomized bound-verification campaign
    Trials(TrialsArgs),
    /// Apply a transform sequence and check the cumulative bound
    Iterate(IterateArgs),
    /// RGB channel-scaling case study
    CaseStudyRgb(CaseStudyRgbArgs),
    /// Two-modality normalization case study
    CaseStudyMultimodal(CaseStudyMultimodalArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Point-cloud file: headerless CSV, or PPM (P3) for pixel clouds
    #[arg(long, value_name = "PATH", conflicts_with = "generate")]
    pub input: Option<PathBuf>,
    /// Synthetic generator, e.g. "circle:points=12,radius=1" or "grid:side=3,dim=2"
    #[arg(long, value_name = "SPEC")]
    pub generate: Option<String>,
    /// Seed for seeded generators and campaigns
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Report file (stdout when omitted)
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Per-axis factors, e.g. --factors 1,1.02
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with = "transform")]
    pub factors: Option<Vec<f64>>,
    /// Transform JSON file: {"factors": [f1, ..., fn]}
    #[arg(long, value_name = "PATH")]
    pub transform: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DiagramArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Highest homology dimension to report
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    /// Filtration radius cutoff (defaults to the cloud diameter)
    #[arg(long)]
    pub max_radius: Option<f64>,
    /// Keep zero-persistence pairs in the diagrams
    #[arg(long)]
    pub keep_zero: bool,
    /// Also write the loaded or generated cloud as CSV
    #[arg(long, value_name = "PATH")]
    pub emit_cloud: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Bottleneck,
    Wasserstein,
}

#[derive(Debug, Args)]
pub struct DistanceArgs {
    /// First diagram file (bare diagram JSON or a `diagram` report)
    #[arg(long = "a", value_name = "PATH")]
    pub left: PathBuf,
    /// Second diagram file
    #[arg(long = "b", value_name = "PATH")]
    pub right: PathBuf,
    /// Homology dimension to select from report files
    #[arg(long, default_value_t = 0)]
    pub dim: usize,
    #[arg(long, value_enum, default_value_t = Metric::Bottleneck)]
    pub metric: Metric,
    /// Order p for the Wasserstein metric
    #[arg(long, default_value_t = 2.0)]
    pub wasserstein_p: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Use an explicit diameter instead of a cloud
    #[arg(long, conflicts_with_all = ["input", "generate"])]
    pub diam: Option<f64>,
    #[command(flatten)]
    pub transform: TransformArgs,
    /// Homology dimensions for per-dimension bounds (needs a cloud)
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub dims: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Uniform,
    BoundarySpread,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    /// Perturbation tolerance epsilon
    #[arg(long)]
    pub epsilon: f64,
    #[command(flatten)]
    pub input: InputArgs,
    /// Use an explicit diameter instead of a cloud
    #[arg(long, conflicts_with_all = ["input", "generate"])]
    pub diam: Option<f64>,
    /// Number of axes to assign factors to
    #[arg(long)]
    pub axes: usize,
    #[arg(long, value_enum, default_value_t = Strategy::Uniform)]
    pub strategy: Strategy,
    /// Axes placed at the high factor level under boundary-spread
    #[arg(long, default_value_t = 1)]
    pub spread_count: usize,
    /// The low factor level
    #[arg(long, default_value_t = 1.0)]
    pub s_min: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub transform: TransformArgs,
    /// Homology dimensions to verify
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub dims: Vec<usize>,
    /// Also measure the p-Wasserstein distance
    #[arg(long)]
    pub wasserstein_p: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TrialsArgs {
    /// Number of random cloud/transform trials
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Homology dimensions verified per trial
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub dims: Vec<usize>,
    /// Largest cloud sampled per trial
    #[arg(long, default_value_t = 12)]
    pub max_points: usize,
    /// Largest ambient dimension sampled per trial
    #[arg(long, default_value_t = 3)]
    pub max_axes: usize,
    /// Lower edge of the sampled factor range
    #[arg(long, default_value_t = 0.5)]
    pub factor_lo: f64,
    /// Upper edge of the sampled factor range
    #[arg(long, default_value_t = 1.5)]
    pub factor_hi: f64,
    /// Worker threads; results are identical for any value
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct IterateArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Factor list per step, repeatable: --factors 1,1.1 --factors 1,1.2
    #[arg(long = "factors", value_name = "LIST", action = clap::ArgAction::Append)]
    pub factors: Vec<String>,
    /// JSON file with the transform sequence: [{"factors": [...]}, ...]
    #[arg(long, value_name = "PATH", conflicts_with = "factors")]
    pub transforms: Option<PathBuf>,
    /// Homology dimensions to measure
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub dims: Vec<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CaseStudyRgbArgs {
    /// Tolerance for the full-range [0,255]^3 analysis
    #[arg(long, default_value_t = 10.0)]
    pub epsilon_full: f64,
    /// Tolerance for the observed-image analysis
    #[arg(long, default_value_t = 5.0)]
    pub epsilon: f64,
    /// Smallest observed RGB values
    #[arg(long, value_delimiter = ',', num_args = 3, default_value = "50,60,40")]
    pub rgb_min: Vec<f64>,
    /// Largest observed RGB values
    #[arg(long, value_delimiter = ',', num_args = 3, default_value = "200,180,220")]
    pub rgb_max: Vec<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CaseStudyMultimodalArgs {
    #[arg(long, default_value_t = 200.0)]
    pub diam: f64,
    #[arg(long, default_value_t = 5.0)]
    pub epsilon: f64,
    /// Axis count of the first (text) feature block
    #[arg(long, default_value_t = 300)]
    pub text_axes: usize,
    /// Axis count of the second (image) feature block
    #[arg(long, default_value_t = 512)]
    pub image_axes: usize,
    /// Observed value range of the text block
    #[arg(long, default_value_t = 1.0)]
    pub text_range: f64,
    /// Observed value range of the image block
    #[arg(long, default_value_t = 100.0)]
    pub image_range: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}
