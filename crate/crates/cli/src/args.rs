use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "unruh",
    version,
    about = "Uniformly accelerated two-level atoms in a scalar vacuum"
)]
pub struct Cli {
    /// Output table format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the table to this file instead of stdout; relative paths resolve under the output directory.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Directory for relative `--output` paths.
    #[arg(long, global = true, env = "UNRUH_OUTPUT_DIR")]
    pub output_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Jsonl,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fourier transform of the field correlation along the trajectory.
    Correlations(CorrelationsArgs),
    /// Single-atom Bloch-vector evolution.
    Single(SingleArgs),
    /// Spontaneous excitation rate.
    Rate(RateArgs),
    /// Two-atom evolution under the collective generator.
    Two(TwoArgs),
    /// Parameter sweep over a grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct Temperature {
    /// Inverse Unruh temperature.
    #[arg(long)]
    pub beta_u: Option<f64>,

    /// Proper acceleration; `β_U = 2π/a`.
    #[arg(long)]
    pub acceleration: Option<f64>,
}

impl Temperature {
    pub fn beta_u(&self) -> f64 {
        match (self.beta_u, self.acceleration) {
            (Some(beta), _) => beta,
            (None, Some(a)) => 2.0 * std::f64::consts::PI / a,
            (None, None) => unreachable!("clap enforces one of the temperature flags"),
        }
    }
}

#[derive(Debug, Args)]
pub struct CorrelationsArgs {
    /// Frequencies, comma separated.
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    pub lambda: Vec<f64>,

    #[command(flatten)]
    pub temperature: Temperature,

    /// Also evaluate the transform by quadrature of the Wightman function.
    #[arg(long)]
    pub numeric: bool,

    /// Pole regularization for the quadrature.
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
}

#[derive(Debug, Args)]
pub struct SingleArgs {
    /// Level spacing.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,

    #[command(flatten)]
    pub temperature: Temperature,

    /// Polarization axis `x,y,z`.
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    pub n: String,

    /// Initial Bloch vector `x,y,z`, or `ground`, `excited`, `mixed`.
    #[arg(long, default_value = "ground", allow_hyphen_values = true)]
    pub rho0: String,

    /// Final time.
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,

    /// Number of time intervals.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,

    /// Bloch vector of the final state for the transition probability column.
    #[arg(long, allow_hyphen_values = true)]
    pub observable: Option<String>,
}

#[derive(Debug, Args)]
pub struct RateArgs {
    /// Level spacing.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,

    #[command(flatten)]
    pub temperature: Temperature,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    /// `A = 1/(2πβ_U)`, `B = ω/4π`, `C = 0`; needs `β_U ω ≤ 2`.
    Large,
    /// Full scalar-field coefficients.
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PropagationKind {
    Exact,
    Adaptive,
}

#[derive(Debug, Args)]
pub struct TwoArgs {
    /// Level spacing.
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,

    #[command(flatten)]
    pub temperature: Temperature,

    /// Polarization axis `x,y,z`.
    #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
    pub n: String,

    /// Initial state: `product:(x,y,z),(x,y,z)`, `werner:EPS`, `singlet`, `mixed`, or `file:PATH`.
    #[arg(long, allow_hyphen_values = true)]
    pub init: String,

    /// Final time.
    #[arg(long, default_value_t = 10.0)]
    pub t_max: f64,

    /// Number of time intervals.
    #[arg(long, default_value_t = 100)]
    pub steps: usize,

    /// Kossakowski coefficient builder.
    #[arg(long, value_enum, default_value_t = Builder::Large)]
    pub builder: Builder,

    /// Propagation method.
    #[arg(long, value_enum, default_value_t = PropagationKind::Exact)]
    pub propagation: PropagationKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// Asymptotic two-atom concurrence; parameters `tau`, `r`.
    Concurrence,
    /// Spontaneous excitation rate; parameters `omega`, `beta_u`.
    Rate,
    /// Ground-to-excited probability along `z`; parameters `omega`, `beta_u`, `t`.
    Transition,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Quantity evaluated at every grid point.
    #[arg(long, value_enum)]
    pub of: Quantity,

    /// Swept parameter.
    #[arg(long)]
    pub param: String,

    #[arg(long, allow_negative_numbers = true)]
    pub start: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub stop: f64,

    /// Number of grid points.
    #[arg(long, default_value_t = 11)]
    pub points: usize,

    /// Fixed parameters `key=value`, repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE", allow_hyphen_values = true)]
    pub fixed: Vec<String>,
}
