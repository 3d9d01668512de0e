//! Command-line grammar.

use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sqt_core::analysis::{DEFAULT_REFINE_TOL, DEFAULT_SWEEP_GRID, DEFAULT_WINDOW_GRID};
use sqt_core::{Axis, Parameter, PointParams};

/// Secure quantum teleportation through a decohering two-mode squeezed
/// vacuum: point metrics, feasible time windows and 2-D region sweeps.
#[derive(Debug, Parser)]
#[command(name = "sqt-sim", version)]
pub struct Cli {
    /// Worker threads for sweeps [default: number of CPUs]
    #[arg(long, global = true, env = "SQT_SIM_WORKERS")]
    pub workers: Option<NonZeroUsize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fidelity, steering, L and verdict at a single point
    Metrics {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = MetricsFormat::Text)]
        format: MetricsFormat,
        /// Write here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Time intervals in [0, t_max] on which L > 0
    Window {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long = "t-max", default_value_t = 20.0, allow_negative_numbers = true)]
        t_max: f64,
        /// Number of uniform bracketing nodes
        #[arg(long, default_value_t = DEFAULT_WINDOW_GRID)]
        grid: usize,
        /// Bisection tolerance on the boundaries
        #[arg(long, default_value_t = DEFAULT_REFINE_TOL, allow_negative_numbers = true)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = WindowFormat::Text)]
        format: WindowFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Metrics on a 2-D grid of two parameters
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// Two axes as name:min:max[:count], name one of t, r, R, T, gamma
        /// [default: t:0:20 r:0:4]
        #[arg(long, num_args = 2, value_names = ["AXIS1", "AXIS2"], allow_hyphen_values = true)]
        axes: Option<Vec<AxisSpec>>,
        /// Points per axis when a spec omits its count
        #[arg(long, default_value_t = DEFAULT_SWEEP_GRID)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = SweepFormat::Csv)]
        format: SweepFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Model inputs shared by every subcommand.
#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    /// Squeezing of the resource state
    #[arg(long = "r", default_value_t = 3.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Squeezing of the reservoir
    #[arg(long = "R", default_value_t = 0.1, allow_negative_numbers = true)]
    pub bath_squeezing: f64,
    /// Reservoir temperature
    #[arg(long = "T", default_value_t = 1.0, allow_negative_numbers = true)]
    pub temperature: f64,
    /// Decay rate
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Evolution time
    #[arg(long = "t", default_value_t = 0.0, allow_negative_numbers = true)]
    pub t: f64,
}

impl From<ParamArgs> for PointParams {
    fn from(p: ParamArgs) -> Self {
        PointParams { r: p.r, bath_squeezing: p.bath_squeezing, temperature: p.temperature, gamma: p.gamma, t: p.t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricsFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WindowFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFormat {
    Csv,
    Json,
    Pgm,
}

/// A parsed `name:min:max[:count]` axis string.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisSpec {
    pub parameter: Parameter,
    pub min: f64,
    pub max: f64,
    pub count: Option<usize>,
}

impl AxisSpec {
    pub fn resolve(&self, default_count: usize) -> sqt_core::Result<Axis> {
        Axis::new(self.parameter, self.min, self.max, self.count.unwrap_or(default_count))
    }
}

impl std::str::FromStr for AxisSpec {
    type Err = String;

    fn from_str(spec: &str) -> Result<Self, String> {
        let bad = |why: &str| format!("axis spec '{spec}': {why}");
        let fields: Vec<&str> = spec.split(':').collect();
        if !(3..=4).contains(&fields.len()) {
            return Err(bad("expected name:min:max or name:min:max:count"));
        }
        let parameter = fields[0].parse::<Parameter>().map_err(|e| bad(&e.to_string()))?;
        let number = |s: &str, what: &str| s.parse::<f64>().map_err(|_| bad(&format!("{what} '{s}' is not a number")));
        let min = number(fields[1], "min")?;
        let max = number(fields[2], "max")?;
        let count = match fields.get(3) {
            Some(c) => Some(c.parse::<usize>().map_err(|_| bad(&format!("count '{c}' is not a positive integer")))?),
            None => None,
        };
        Ok(AxisSpec { parameter, min, max, count })
    }
}

pub fn default_axes() -> [AxisSpec; 2] {
    [
        AxisSpec { parameter: Parameter::Time, min: 0.0, max: 20.0, count: None },
        AxisSpec { parameter: Parameter::Squeezing, min: 0.0, max: 4.0, count: None },
    ]
}
