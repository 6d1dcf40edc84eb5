//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "winding",
    version,
    about = "Winding angle of Brownian motion around a point vortex"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate an ensemble and write one sample file per time.
    Simulate(RunArgs),
    /// Compare existing sample files with the asymptotic law; writes report.json.
    Validate(RunArgs),
    /// Print a normalized limit density as `x,pdf` CSV.
    Pdf(PdfArgs),
    /// Evaluate one of the numerical oracles.
    Oracle(OracleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    /// Free plane with a point vortex at the origin.
    Point,
    /// Exterior of a reflecting disk of radius `--a`.
    Disk,
    /// Reflecting annulus `--a < r < --b`.
    Annulus,
}

/// Flags shared by `simulate` and `validate`. Anything not given falls back
/// to `--config`, then to the built-in defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// JSON run configuration, or a report.json whose `config` echo to reuse.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryKind>,
    /// Inner radius (disk, annulus).
    #[arg(long)]
    pub a: Option<f64>,
    /// Outer radius (annulus).
    #[arg(long)]
    pub b: Option<f64>,
    /// Vortex strength.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Start radius [default: 1].
    #[arg(long)]
    pub r0: Option<f64>,
    /// Observation time; repeat for several, in increasing order.
    #[arg(long = "t")]
    pub t: Vec<f64>,
    /// Number of realizations [default: 1000].
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Relative spatial step [default: 0.05].
    #[arg(long)]
    pub delta: Option<f64>,
    /// Largest time step [default: t/1000].
    #[arg(long)]
    pub dt_max: Option<f64>,
    /// Smallest time step [default: 1e-12].
    #[arg(long)]
    pub dt_min: Option<f64>,
    /// Histogram bins for validation [default: 100].
    #[arg(long)]
    pub bins: Option<usize>,
    /// Directory for sample files and report.json [default: .].
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads, 0 for one per core. Does not change any output.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawName {
    Point,
    Disk,
    Annulus,
    PointFree,
    DiskFree,
}

#[derive(Debug, Clone, Args)]
pub struct PdfArgs {
    #[arg(long, value_enum)]
    pub law: LawName,
    #[arg(long, allow_hyphen_values = true)]
    pub x_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: f64,
    /// Number of equally spaced points, endpoints included.
    #[arg(long, default_value_t = 512)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(subcommand)]
    pub kind: OracleKind,
}

#[derive(Debug, Clone, Subcommand)]
pub enum OracleKind {
    /// Large-time winding density around a point vortex, by quadrature.
    PointQuad {
        /// Raw winding angle; repeat for several.
        #[arg(long, required = true, allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[arg(long)]
        t: f64,
        #[arg(long, default_value_t = 1.0)]
        r0: f64,
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Large-time winding density outside a disk, by quadrature.
    DiskQuad {
        #[arg(long, required = true, allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[arg(long)]
        t: f64,
        #[arg(long)]
        a: f64,
        /// Start radius [default: a].
        #[arg(long)]
        r0: Option<f64>,
        #[arg(long)]
        beta: f64,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Smallest positive root of the annulus Bessel cross product.
    Eigenvalue {
        #[arg(long)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        k: f64,
    },
    /// The complex Bessel order sqrt(mu^2 + i beta mu).
    Order {
        #[arg(long, allow_hyphen_values = true)]
        mu: f64,
        #[arg(long)]
        beta: f64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    /// Upper limit of the mu integral [default: from the decay rate].
    #[arg(long)]
    pub mu_cutoff: Option<f64>,
}
