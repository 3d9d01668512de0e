//! Teleportation of a coherent state through a two-mode resource.
//!
//! The output covariance is `sigma_out = sigma_in + Sigma`, where the added
//! noise `Sigma = [[X, Z], [Z, Y]]` is read off the resource blocks:
//!
//! ```text
//! X = A11 + B11 - 2 C11
//! Y = A22 + B22 + 2 C22
//! Z = A12 - B12 + C12 - C21
//! ```

use crate::dd::Dd;
use crate::error::{Result, SqtError};
use crate::gaussian::{Blocks, Mat2, SingleModeGaussian, TwoModeCovariance};

/// Noise matrix added by the protocol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedSigma {
    x: Dd,
    y: Dd,
    z: Dd,
}

impl ReducedSigma {
    pub fn from_resource(sigma: &TwoModeCovariance) -> Self {
        let Blocks { a, b, c } = sigma.blocks();
        let two = 2.0;
        ReducedSigma {
            x: a.get_dd(0, 0) + b.get_dd(0, 0) - c.get_dd(0, 0).mul_f64(two),
            y: a.get_dd(1, 1) + b.get_dd(1, 1) + c.get_dd(1, 1).mul_f64(two),
            z: a.get_dd(0, 1) - b.get_dd(0, 1) + c.get_dd(0, 1) - c.get_dd(1, 0),
        }
    }

    pub fn x(&self) -> f64 {
        self.x.to_f64()
    }

    pub fn y(&self) -> f64 {
        self.y.to_f64()
    }

    pub fn z(&self) -> f64 {
        self.z.to_f64()
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::from_dd([[self.x, self.z], [self.z, self.y]])
    }

    /// `1 + Tr Sigma + det Sigma = det(I/2 + sigma_out)` for a coherent input.
    fn delta_dd(&self) -> Dd {
        Dd::ONE + self.x + self.y + self.x * self.y - self.z * self.z
    }
}

/// Vacuum-noise coherent state with the given displacement.
pub fn coherent_state(mean: [f64; 2]) -> SingleModeGaussian {
    SingleModeGaussian::new(mean, Mat2::scaled_identity(0.5)).expect("coherent covariance is symmetric")
}

/// The input state: coherent, centred at the origin.
pub fn coherent_input() -> SingleModeGaussian {
    coherent_state([0.0, 0.0])
}

/// Teleported state for the coherent input; the output mean equals the
/// input mean.
pub fn output_state(resource: &TwoModeCovariance) -> Result<SingleModeGaussian> {
    output_state_for(&coherent_input(), resource)
}

/// Teleported state for an arbitrary single-mode input.
pub fn output_state_for(input: &SingleModeGaussian, resource: &TwoModeCovariance) -> Result<SingleModeGaussian> {
    resource.ensure_physical()?;
    let noise = ReducedSigma::from_resource(resource).matrix();
    SingleModeGaussian::new(input.mean, input.cov + noise)
}

/// `det(sigma + (i/2) J)`, which for real symmetric `sigma` is `det sigma - 1/4`.
fn uncertainty_excess(cov: &Mat2) -> Dd {
    cov.det_dd() - Dd::QUARTER
}

/// Fidelity between two single-mode Gaussian states.
pub fn fidelity_general(input: &SingleModeGaussian, output: &SingleModeGaussian) -> Result<f64> {
    input.ensure_physical()?;
    output.ensure_physical()?;
    let sum = input.cov + output.cov;
    let delta = sum.det_dd();
    let inv = sum.inverse().ok_or_else(|| SqtError::Degenerate("sigma_in + sigma_out is singular".into()))?;
    debug_assert!(delta.to_f64() >= 1.0 - 1e-9, "Delta = {delta} < 1 for physical states");

    let theta = (uncertainty_excess(&input.cov) * uncertainty_excess(&output.cov)).mul_f64(4.0).max(Dd::ZERO);

    let d = [Dd::from_f64(output.mean[0]) - input.mean[0].into(), Dd::from_f64(output.mean[1]) - input.mean[1].into()];
    let mut quad = Dd::ZERO;
    for i in 0..2 {
        for j in 0..2 {
            quad += d[i] * inv.get_dd(i, j) * d[j];
        }
    }
    let overlap = (-0.5 * quad.to_f64()).exp();

    // sqrt(Delta + Theta) - sqrt(Theta), rationalised
    let denom = delta / ((delta + theta).sqrt() + theta.sqrt());
    Ok(overlap / denom.to_f64())
}

pub(crate) fn fidelity_coherent_dd(resource: &TwoModeCovariance) -> Result<Dd> {
    resource.ensure_physical()?;
    let delta = ReducedSigma::from_resource(resource).delta_dd();
    if delta <= Dd::ZERO {
        return Err(SqtError::Degenerate(format!("Delta = {delta} is not positive")));
    }
    Ok(delta.sqrt().recip())
}

/// Fidelity of teleporting a coherent state, `1 / sqrt(1 + Tr Sigma + det Sigma)`.
pub fn fidelity_coherent(resource: &TwoModeCovariance) -> Result<f64> {
    fidelity_coherent_dd(resource).map(Dd::to_f64)
}
