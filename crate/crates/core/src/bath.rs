//! Common squeezed thermal reservoir.
//!
//! The bath is fixed by its temperature `T` (units of `hbar omega / k_B`),
//! squeezing `R` and decay rate `gamma`. From these follow the thermal
//! occupation `n_th` and the second moments `N`, `M` that enter the
//! asymptotic covariance.

use serde::{Deserialize, Serialize};

use crate::error::{require, Result, SqtError};
use crate::gaussian::{Blocks, Mat2, TwoModeCovariance};

/// Absolute slack on `|M|^2 <= N(N+1)`.
pub const HEISENBERG_TOL: f64 = 1e-9;

/// Bose–Einstein occupation at unit frequency, `(coth(1/2T) - 1)/2`.
///
/// Evaluated as `e^{-1/T} / (1 - e^{-1/T})`, which stays finite as `T -> 0`.
pub fn thermal_occupation(temperature: f64) -> Result<f64> {
    require(temperature >= 0.0 && temperature.is_finite(), "T", temperature, "non-negative and finite")?;
    if temperature == 0.0 {
        return Ok(0.0);
    }
    let x = -1.0 / temperature;
    Ok(x.exp() / -x.exp_m1())
}

/// Bath moments `(N, M)` for occupation `n_th` and reservoir squeezing `R`.
pub fn bath_moments(n_th: f64, squeezing: f64) -> Result<(f64, f64)> {
    require(n_th >= 0.0 && n_th.is_finite(), "n_th", n_th, "non-negative and finite")?;
    require(squeezing.is_finite(), "R", squeezing, "finite")?;
    let sh = squeezing.sinh();
    let ch = squeezing.cosh();
    let n = n_th * (ch * ch + sh * sh) + sh * sh;
    // adding +0 turns the -0 of an unsqueezed bath into 0
    let m = -(2.0 * n_th + 1.0) * ch * sh + 0.0;
    Ok((n, m))
}

/// `|M|^2 <= N(N+1)` up to [`HEISENBERG_TOL`].
pub fn satisfies_heisenberg(n: f64, m: f64) -> bool {
    n >= 0.0 && m * m <= n * (n + 1.0) + HEISENBERG_TOL
}

/// Stationary covariance `[[(N+1/2) I, M sigma_z], [M sigma_z, (N+1/2) I]]`.
pub fn asymptotic_covariance(n: f64, m: f64) -> Result<TwoModeCovariance> {
    if !(n.is_finite() && m.is_finite()) || !satisfies_heisenberg(n, m) {
        return Err(SqtError::UnphysicalBath { n, m });
    }
    let diag = n + 0.5;
    TwoModeCovariance::from_blocks(&Blocks {
        a: Mat2::scaled_identity(diag),
        b: Mat2::scaled_identity(diag),
        c: Mat2::diag(m, -m),
    })
}

/// Reservoir parameters with the derived occupation and moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathParams {
    temperature: f64,
    squeezing: f64,
    gamma: f64,
    n_th: f64,
    n: f64,
    m: f64,
}

impl BathParams {
    pub fn new(temperature: f64, squeezing: f64, gamma: f64) -> Result<Self> {
        require(squeezing >= 0.0 && squeezing.is_finite(), "R", squeezing, "non-negative and finite")?;
        require(gamma > 0.0 && gamma.is_finite(), "gamma", gamma, "positive and finite")?;
        let n_th = thermal_occupation(temperature)?;
        let (n, m) = bath_moments(n_th, squeezing)?;
        if !satisfies_heisenberg(n, m) {
            return Err(SqtError::UnphysicalBath { n, m });
        }
        Ok(BathParams { temperature, squeezing, gamma, n_th, n, m })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn squeezing(&self) -> f64 {
        self.squeezing
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn n_th(&self) -> f64 {
        self.n_th
    }

    /// Mean photon number `N`.
    pub fn mean_photons(&self) -> f64 {
        self.n
    }

    /// Squeezing correlation `M` (real, `<= 0`).
    pub fn squeezing_correlation(&self) -> f64 {
        self.m
    }

    pub fn asymptotic_covariance(&self) -> TwoModeCovariance {
        asymptotic_covariance(self.n, self.m).expect("moments validated at construction")
    }
}
