use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "hausdorff", version, about = "Hausdorff operators on half-plane function spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List kernel types and their JSON parameters.
    Catalog(CatalogArgs),
    /// Moment ∫ t^{(1+α)/p-1} |φ(t)| dt of a kernel for a space.
    Moment(SpaceArgs),
    /// Norm of a holomorphic function expression.
    Norm(SpaceArgs),
    /// Values of ℋ_φ f at points of the upper half-plane.
    Apply(ApplyArgs),
    /// Two-sided operator-norm estimate and its gap.
    Sharpness(SharpnessArgs),
    /// Commutation residual with the Hilbert transform.
    Commute(CommuteArgs),
    /// Convergence of horizontal slices of ℋ_φ f to 𝓗_φ(f*).
    Boundary(BoundaryArgs),
    /// Sign constants and sector sampling for Φ_ε.
    Signlemma(SignLemmaArgs),
    /// A_q quotients of |x|^α over intervals.
    Muckenhoupt(MuckenhouptArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Relative quadrature tolerance.
    #[arg(long)]
    pub rel_tol: Option<f64>,
    /// Absolute quadrature tolerance.
    #[arg(long)]
    pub abs_tol: Option<f64>,
    /// Maximum adaptive subdivisions.
    #[arg(long)]
    pub max_subdiv: Option<usize>,
    /// Output file (CSV, or JSON for `catalog`).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for random sample points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct CatalogArgs {
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct SpaceSel {
    /// bergman, hardy, dirichlet or real_lp.
    #[arg(long)]
    pub space: String,
    /// Integrability exponent; `inf` is accepted where the space allows it.
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Weight exponent.
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Args, Debug)]
pub struct SpaceArgs {
    /// Kernel descriptor in JSON.
    #[arg(long)]
    pub kernel: Option<String>,
    /// Function expression, e.g. `pshift(1,0,1)`.
    #[arg(long)]
    pub function: Option<String>,
    #[command(flatten)]
    pub space: SpaceSel,
    /// Comma-separated heights for Hardy norms.
    #[arg(long, value_delimiter = ',')]
    pub y_grid: Option<Vec<f64>>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct ApplyArgs {
    #[arg(long)]
    pub kernel: String,
    #[arg(long)]
    pub function: String,
    /// Points as `x:y` pairs separated by commas, e.g. `0:1,2.5:0.1`.
    #[arg(long, value_delimiter = ',')]
    pub points: Vec<String>,
    /// Number of random points when `--points` is absent.
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SharpnessArgs {
    #[arg(long)]
    pub kernel: String,
    #[command(flatten)]
    pub space: SpaceSel,
    #[arg(long, value_delimiter = ',')]
    pub eps_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub delta_grid: Option<Vec<f64>>,
    /// Largest accepted gap/upper.
    #[arg(long, default_value_t = 0.05)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct CommuteArgs {
    #[arg(long)]
    pub kernel: String,
    /// Real function: `lorentzian`, `gaussian`, `odd_gaussian`, or
    /// `re:EXPR` / `im:EXPR` for boundary values of an expression.
    #[arg(long, default_value = "lorentzian")]
    pub function: String,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct BoundaryArgs {
    #[arg(long)]
    pub kernel: String,
    #[arg(long)]
    pub function: String,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 0.0)]
    pub alpha: f64,
    #[arg(long, value_delimiter = ',', default_value = "0.1,0.01,0.001,0.0001")]
    pub y_grid: Vec<f64>,
    /// Largest accepted final residual relative to ‖f‖.
    #[arg(long, default_value_t = 1e-4)]
    pub tolerance: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct SignLemmaArgs {
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub alpha: f64,
    /// Values of ε; defaults to 0.5, 0.1 and 0.01 times the sector opening.
    #[arg(long, value_delimiter = ',')]
    pub eps_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug)]
pub struct MuckenhouptArgs {
    #[arg(long)]
    pub alpha: f64,
    /// The A_q exponent.
    #[arg(long, default_value_t = 2.0)]
    pub q: f64,
    /// A single interval `a,b`; random intervals otherwise.
    #[arg(long, value_delimiter = ',')]
    pub interval: Option<Vec<f64>>,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub common: Common,
}
