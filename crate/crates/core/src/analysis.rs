//! Secure-teleportation figure of merit, feasible time windows and 2-D
//! parameter sweeps.
//!
//! A point is secure when `L = min{S^{A->B}, S^{B->A}, F - 2/3}` is strictly
//! positive.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::dynamics::EvolutionScenario;
use crate::error::{require, Result, SqtError};
use crate::gaussian::TwoModeCovariance;
use crate::steering::steering_pair;
use crate::teleportation::fidelity_coherent_dd;

pub const DEFAULT_WINDOW_GRID: usize = 512;
pub const DEFAULT_SWEEP_GRID: usize = 256;
pub const DEFAULT_REFINE_TOL: f64 = 1e-6;
pub const MIN_WINDOW_GRID: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SqtMetrics {
    pub fidelity: f64,
    pub s_ab: f64,
    pub s_ba: f64,
    pub l: f64,
}

impl SqtMetrics {
    /// `L > 0`; a tie at zero is not secure.
    pub fn is_secure(&self) -> bool {
        self.l > 0.0
    }

    /// Fidelity margin over the classical bound, `F - 2/3`.
    pub fn fidelity_margin(&self) -> f64 {
        self.l_components()[2]
    }

    fn l_components(&self) -> [f64; 3] {
        [self.s_ab, self.s_ba, fidelity_margin(Dd::from_f64(self.fidelity))]
    }
}

fn fidelity_margin(fidelity: Dd) -> f64 {
    (fidelity - Dd::ratio(2, 3)).to_f64()
}

/// Metrics of a resource covariance.
pub fn metrics_of(sigma: &TwoModeCovariance) -> Result<SqtMetrics> {
    let fidelity = fidelity_coherent_dd(sigma)?;
    let steering = steering_pair(sigma)?;
    let fidelity = fidelity.to_f64();
    let margin = fidelity_margin(Dd::from_f64(fidelity));
    Ok(SqtMetrics {
        fidelity,
        s_ab: steering.s_ab,
        s_ba: steering.s_ba,
        l: steering.s_ab.min(steering.s_ba).min(margin),
    })
}

/// Metrics of the evolved resource at time `t`.
pub fn sqt_metrics(scenario: &EvolutionScenario, t: f64) -> Result<SqtMetrics> {
    metrics_of(&scenario.evolve(t)?)
}

/// Disjoint, sorted time intervals on which `L > 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeWindow {
    pub intervals: Vec<(f64, f64)>,
    /// Boundaries are located to within this distance.
    pub tolerance: f64,
}

impl TimeWindow {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

fn is_secure_at(scenario: &EvolutionScenario, t: f64) -> Result<bool> {
    Ok(sqt_metrics(scenario, t)?.is_secure())
}

/// Narrows `[lo, hi]`, across which `pred` flips, to width `< tol` and
/// returns its midpoint.
fn bisect_boundary<F>(pred: &F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<bool>,
{
    let lo_state = pred(lo)?;
    while hi - lo >= tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid)? == lo_state {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Intervals of `[0, t_max]` on which `pred` holds, located by grid
/// bracketing and bisection.
fn scan_intervals<F>(pred: F, t_max: f64, grid_points: usize, tol: f64) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> Result<bool>,
{
    let node = |i: usize| {
        if i + 1 == grid_points {
            t_max
        } else {
            t_max * i as f64 / (grid_points - 1) as f64
        }
    };

    let mut intervals = Vec::new();
    let mut prev = pred(0.0)?;
    let mut start = if prev { Some(0.0) } else { None };
    for i in 1..grid_points {
        let t = node(i);
        let holds = pred(t)?;
        if holds != prev {
            let boundary = bisect_boundary(&pred, node(i - 1), t, tol)?;
            if holds {
                start = Some(boundary);
            } else if let Some(s) = start.take() {
                if boundary > s {
                    intervals.push((s, boundary));
                }
            }
        }
        prev = holds;
    }
    if let Some(s) = start {
        if t_max > s {
            intervals.push((s, t_max));
        }
    }
    Ok(intervals)
}

/// Finds every interval of `[0, t_max]` where `L > 0`.
///
/// `L(t)` is sampled on `grid_points` uniform nodes; each verdict change
/// between neighbours is refined by bisection. No monotonicity of `L(t)` is
/// assumed, but windows narrower than the grid spacing can be missed.
pub fn sqt_window(scenario: &EvolutionScenario, t_max: f64, grid_points: usize, refine_tol: f64) -> Result<TimeWindow> {
    require(t_max > 0.0 && t_max.is_finite(), "t_max", t_max, "positive")?;
    require(refine_tol > 0.0 && refine_tol.is_finite(), "tol", refine_tol, "positive")?;
    require(grid_points >= MIN_WINDOW_GRID, "grid", grid_points as f64, "at least 16")?;
    let intervals = scan_intervals(|t| is_secure_at(scenario, t), t_max, grid_points, refine_tol)?;
    Ok(TimeWindow { intervals, tolerance: refine_tol })
}

/// A model parameter that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parameter {
    /// Evolution time `t`.
    Time,
    /// Resource squeezing `r`.
    Squeezing,
    /// Reservoir squeezing `R`.
    BathSqueezing,
    /// Reservoir temperature `T`.
    Temperature,
    /// Decay rate `gamma`.
    Gamma,
}

impl Parameter {
    pub const ALL: [Parameter; 5] =
        [Parameter::Time, Parameter::Squeezing, Parameter::BathSqueezing, Parameter::Temperature, Parameter::Gamma];

    pub fn name(self) -> &'static str {
        match self {
            Parameter::Time => "t",
            Parameter::Squeezing => "r",
            Parameter::BathSqueezing => "R",
            Parameter::Temperature => "T",
            Parameter::Gamma => "gamma",
        }
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Parameter {
    type Err = SqtError;

    fn from_str(s: &str) -> Result<Self> {
        Parameter::ALL.into_iter().find(|p| p.name() == s).ok_or_else(|| SqtError::UnknownParameter(s.to_string()))
    }
}

/// Uniform grid over one parameter, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub parameter: Parameter,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(parameter: Parameter, min: f64, max: f64, count: usize) -> Result<Self> {
        let invalid = |reason: String| SqtError::InvalidAxis { name: parameter.name().to_string(), reason };
        if !(min.is_finite() && max.is_finite()) {
            return Err(invalid(format!("range [{min}, {max}] is not finite")));
        }
        if min >= max {
            return Err(invalid(format!("min {min} must be below max {max}")));
        }
        if count < 2 {
            return Err(invalid(format!("needs at least 2 points, got {count}")));
        }
        Ok(Axis { parameter, min, max, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.max
        } else {
            self.min + (self.max - self.min) * (i as f64 / (self.count - 1) as f64)
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Full set of model inputs at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointParams {
    pub r: f64,
    #[serde(rename = "R")]
    pub bath_squeezing: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    pub gamma: f64,
    pub t: f64,
}

impl Default for PointParams {
    /// Resource and bath of the `t`-versus-`r` region plot.
    fn default() -> Self {
        PointParams { r: 3.0, bath_squeezing: 0.1, temperature: 1.0, gamma: 0.1, t: 0.0 }
    }
}

impl PointParams {
    pub fn get(&self, p: Parameter) -> f64 {
        match p {
            Parameter::Time => self.t,
            Parameter::Squeezing => self.r,
            Parameter::BathSqueezing => self.bath_squeezing,
            Parameter::Temperature => self.temperature,
            Parameter::Gamma => self.gamma,
        }
    }

    pub fn with(mut self, p: Parameter, value: f64) -> Self {
        match p {
            Parameter::Time => self.t = value,
            Parameter::Squeezing => self.r = value,
            Parameter::BathSqueezing => self.bath_squeezing = value,
            Parameter::Temperature => self.temperature = value,
            Parameter::Gamma => self.gamma = value,
        }
        self
    }

    pub fn scenario(&self) -> Result<EvolutionScenario> {
        EvolutionScenario::from_params(self.r, self.bath_squeezing, self.temperature, self.gamma)
    }

    pub fn metrics(&self) -> Result<SqtMetrics> {
        sqt_metrics(&self.scenario()?, self.t)
    }
}

/// Metrics on a 2-D grid. Cell `(i, j)` holds axis-1 node `i` and axis-2
/// node `j`, stored row-major in `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionMap {
    pub axis1: Axis,
    pub axis2: Axis,
    pub template: PointParams,
    values: Vec<SqtMetrics>,
    mask: Vec<bool>,
}

impl RegionMap {
    fn index(&self, i: usize, j: usize) -> usize {
        assert!(i < self.axis1.count && j < self.axis2.count, "cell ({i}, {j}) out of range");
        i * self.axis2.count + j
    }

    pub fn get(&self, i: usize, j: usize) -> &SqtMetrics {
        &self.values[self.index(i, j)]
    }

    pub fn is_secure(&self, i: usize, j: usize) -> bool {
        self.mask[self.index(i, j)]
    }

    pub fn point(&self, i: usize, j: usize) -> PointParams {
        self.template.with(self.axis1.parameter, self.axis1.value(i)).with(self.axis2.parameter, self.axis2.value(j))
    }

    /// Cells in row-major order.
    pub fn values(&self) -> &[SqtMetrics] {
        &self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn secure_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

/// Evaluates the metrics on every node of `axis1 × axis2`, other parameters
/// taken from `template`. Cells run in parallel on the current rayon pool;
/// the result does not depend on scheduling.
pub fn sweep_2d(template: &PointParams, axis1: Axis, axis2: Axis) -> Result<RegionMap> {
    if axis1.parameter == axis2.parameter {
        return Err(SqtError::DuplicateAxis(axis1.parameter.name().to_string()));
    }
    let (n1, n2) = (axis1.count, axis2.count);
    let cells: Vec<Result<SqtMetrics>> = (0..n1 * n2)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n2, k % n2);
            let (v1, v2) = (axis1.value(i), axis2.value(j));
            template.with(axis1.parameter, v1).with(axis2.parameter, v2).metrics().map_err(|e| SqtError::Node {
                i,
                j,
                axis1: axis1.parameter.name().to_string(),
                value1: v1,
                axis2: axis2.parameter.name().to_string(),
                value2: v2,
                source: Box::new(e),
            })
        })
        .collect();
    let values = cells.into_iter().collect::<Result<Vec<_>>>()?;
    let mask = values.iter().map(SqtMetrics::is_secure).collect();
    Ok(RegionMap { axis1, axis2, template: *template, values, mask })
}
