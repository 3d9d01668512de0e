//! Decoherence of the two-mode squeezed vacuum in the common bath.
//!
//! The covariance relaxes exponentially towards the bath's stationary state,
//! `sigma(t) = e^{-gamma t} sigma(0) + (1 - e^{-gamma t}) sigma(inf)`.

use crate::bath::BathParams;
use crate::dd::Dd;
use crate::error::{require, Result};
use crate::gaussian::TwoModeCovariance;

/// Two-mode squeezed vacuum with squeezing `r`.
///
/// The hyperbolic entries are formed from a single `e^{2r}` so that
/// `cosh^2 - sinh^2 = 1` holds to double-double precision and the state
/// stays pure for any representable `r`.
pub fn initial_tmsv(r: f64) -> Result<TwoModeCovariance> {
    require(r >= 0.0 && r.is_finite(), "r", r, "non-negative and finite")?;
    let growth = Dd::from_f64((2.0 * r).exp());
    require(growth.is_finite(), "r", r, "small enough that e^{2r} is finite")?;
    let decay = growth.recip();
    let c = (growth + decay) * Dd::QUARTER;
    let s = (growth - decay) * Dd::QUARTER;
    let z = Dd::ZERO;
    TwoModeCovariance::from_dd([[c, z, s, z], [z, c, z, -s], [s, z, c, z], [z, -s, z, c]])
}

/// Resource squeezing plus environment; immutable and shareable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionScenario {
    r: f64,
    bath: BathParams,
    sigma0: TwoModeCovariance,
    sigma_inf: TwoModeCovariance,
}

impl EvolutionScenario {
    pub fn new(r: f64, bath: BathParams) -> Result<Self> {
        let sigma0 = initial_tmsv(r)?;
        let sigma_inf = bath.asymptotic_covariance();
        Ok(EvolutionScenario { r, bath, sigma0, sigma_inf })
    }

    /// Convenience constructor from the raw parameters `(r, R, T, gamma)`.
    pub fn from_params(r: f64, bath_squeezing: f64, temperature: f64, gamma: f64) -> Result<Self> {
        Self::new(r, BathParams::new(temperature, bath_squeezing, gamma)?)
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn bath(&self) -> &BathParams {
        &self.bath
    }

    pub fn sigma0(&self) -> &TwoModeCovariance {
        &self.sigma0
    }

    pub fn sigma_inf(&self) -> &TwoModeCovariance {
        &self.sigma_inf
    }

    /// Covariance at time `t >= 0`.
    pub fn evolve(&self, t: f64) -> Result<TwoModeCovariance> {
        require(t >= 0.0 && t.is_finite(), "t", t, "non-negative and finite")?;
        let weight = Dd::from_f64((-self.bath.gamma() * t).exp());
        Ok(self.sigma0.interpolate(weight, &self.sigma_inf))
    }

    /// Same bath, different starting covariance. Used to check the
    /// semigroup property of the evolution.
    pub fn with_initial(&self, sigma0: TwoModeCovariance) -> Self {
        EvolutionScenario { sigma0, ..*self }
    }
}
