//! Gaussian EPR steering.
//!
//! Two independent routes to the same measure:
//!
//! * Schur complement: `S^{A->B} = max{0, -ln(2 nu)}` with `nu` the symplectic
//!   eigenvalue of `M = B - C^T A^{-1} C`.
//! * Closed form: `S^{A->B} = max{0, (1/2) ln(det A / (4 det sigma))}`.
//!
//! They agree because `det M = det sigma / det A`. The closed form is used
//! in production; the Schur route is kept as a cross-check.

use serde::{Deserialize, Serialize};

use crate::dd::Dd;
use crate::error::{Result, SqtError};
use crate::gaussian::{Blocks, TwoModeCovariance};

/// Values within this distance of zero are reported as exactly zero.
pub const ZERO_SNAP: f64 = 1e-14;
/// Minimum determinant of the measured party's block.
const MIN_BLOCK_DET: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// Alice measures, Bob's conditional state is tested.
    AliceToBob,
    /// Bob measures, Alice's conditional state is tested.
    BobToAlice,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SteeringPair {
    pub s_ab: f64,
    pub s_ba: f64,
}

fn clamp(raw: f64) -> f64 {
    if raw > ZERO_SNAP {
        raw
    } else {
        0.0
    }
}

/// Blocks ordered as (measured party, steered party, cross block seen from
/// the measured party).
fn oriented(sigma: &TwoModeCovariance, direction: Direction) -> Blocks {
    let Blocks { a, b, c } = sigma.blocks();
    match direction {
        Direction::AliceToBob => Blocks { a, b, c },
        Direction::BobToAlice => Blocks { a: b, b: a, c: c.transpose() },
    }
}

/// Steering through the symplectic eigenvalue of the Schur complement.
pub fn steering_schur(sigma: &TwoModeCovariance, direction: Direction) -> Result<f64> {
    sigma.ensure_physical()?;
    let Blocks { a: measured, b: steered, c } = oriented(sigma, direction);
    if measured.det() <= MIN_BLOCK_DET {
        return Err(SqtError::Degenerate(format!("measured block has determinant {:e}", measured.det())));
    }
    let inv = measured.inverse().ok_or_else(|| SqtError::Degenerate("measured block is singular".into()))?;
    let schur = steered - c.transpose() * inv * c;
    let nu = schur.symplectic_eigenvalue_dd()?;
    if nu <= Dd::ZERO {
        return Err(SqtError::Degenerate("conditional covariance is singular".into()));
    }
    // -ln(2 nu) = -(1/2) ln(4 nu^2), evaluated on the double-double square
    let four_nu_sq = (nu * nu).mul_f64(4.0);
    Ok(clamp(-0.5 * four_nu_sq.to_f64().ln()))
}

/// Steering through `(1/2) ln(det A / (4 det sigma))`.
pub fn steering_closed_form(sigma: &TwoModeCovariance, direction: Direction) -> Result<f64> {
    sigma.ensure_physical()?;
    let det = sigma.det_dd();
    if det <= Dd::ZERO {
        return Err(SqtError::InvalidMatrix(format!("det sigma = {:e} is not positive", det.to_f64())));
    }
    let measured = oriented(sigma, direction).a;
    let ratio = measured.det_dd() / det.mul_f64(4.0);
    Ok(clamp(0.5 * ratio.to_f64().ln()))
}

/// Both directions through the closed form.
pub fn steering_pair(sigma: &TwoModeCovariance) -> Result<SteeringPair> {
    Ok(SteeringPair {
        s_ab: steering_closed_form(sigma, Direction::AliceToBob)?,
        s_ba: steering_closed_form(sigma, Direction::BobToAlice)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::asymptotic_covariance;
    use crate::dynamics::initial_tmsv;
    use crate::gaussian::Mat2;

    const BOTH: [Direction; 2] = [Direction::AliceToBob, Direction::BobToAlice];

    #[test]
    fn tmsv_steering_is_ln_cosh() {
        for r in [0.5, 1.0, 2.0, 3.0, 5.0] {
            let sigma = initial_tmsv(r).unwrap();
            let expected = (2.0 * r).cosh().ln();
            for dir in BOTH {
                let closed = steering_closed_form(&sigma, dir).unwrap();
                let schur = steering_schur(&sigma, dir).unwrap();
                assert!((closed - expected).abs() < 1e-13, "r = {r}: {closed} vs {expected}");
                assert!((schur - closed).abs() < 1e-13, "r = {r}: {schur} vs {closed}");
            }
        }
        let s = steering_closed_form(&initial_tmsv(1.0).unwrap(), Direction::AliceToBob).unwrap();
        assert!((s - 1.3250027473578645).abs() < 1e-15);
    }

    #[test]
    fn uncorrelated_and_thermal_states_do_not_steer() {
        for dir in BOTH {
            assert_eq!(steering_schur(&TwoModeCovariance::vacuum(), dir).unwrap(), 0.0);
            assert_eq!(steering_closed_form(&TwoModeCovariance::vacuum(), dir).unwrap(), 0.0);
            for n in [0.1, 1.0, 4.0] {
                let thermal = asymptotic_covariance(n, 0.0).unwrap();
                assert_eq!(steering_schur(&thermal, dir).unwrap(), 0.0);
                assert_eq!(steering_closed_form(&thermal, dir).unwrap(), 0.0);
            }
        }
    }

    #[test]
    fn product_of_squeezed_states_does_not_steer() {
        let a = Mat2::diag(0.5 * 1.5f64.exp(), 0.5 * (-1.5f64).exp());
        let b = Mat2::new(1.0, 0.4, 0.4, 0.6);
        let sigma = TwoModeCovariance::from_blocks(&Blocks { a, b, c: Mat2::zero() }).unwrap();
        for dir in BOTH {
            assert_eq!(steering_closed_form(&sigma, dir).unwrap(), 0.0);
            assert_eq!(steering_schur(&sigma, dir).unwrap(), 0.0);
        }
    }

    #[test]
    fn asymmetric_state_steers_one_way() {
        // TMSV with loss on Bob's side only: A -> B survives, B -> A does not.
        let sigma0 = initial_tmsv(1.0).unwrap();
        let Blocks { a, b, c } = sigma0.blocks();
        let eta: f64 = 0.3;
        let te = eta.sqrt();
        let lossy = Blocks {
            a,
            b: b.scale(Dd::from_f64(eta)) + Mat2::scaled_identity(0.5 * (1.0 - eta)),
            c: c.scale(Dd::from_f64(te)),
        };
        let sigma = TwoModeCovariance::from_blocks(&lossy).unwrap();
        let ab = steering_closed_form(&sigma, Direction::AliceToBob).unwrap();
        let ba = steering_closed_form(&sigma, Direction::BobToAlice).unwrap();
        assert!(ab > 0.0, "{ab}");
        assert_eq!(ba, 0.0);
        assert!((steering_schur(&sigma, Direction::AliceToBob).unwrap() - ab).abs() < 1e-14);
        assert_eq!(steering_schur(&sigma, Direction::BobToAlice).unwrap(), 0.0);
    }

    #[test]
    fn unphysical_input_is_rejected() {
        let bad = TwoModeCovariance::from_rows([
            [0.1, 0.0, 0.0, 0.0],
            [0.0, 0.1, 0.0, 0.0],
            [0.0, 0.0, 0.1, 0.0],
            [0.0, 0.0, 0.0, 0.1],
        ])
        .unwrap();
        assert!(steering_schur(&bad, Direction::AliceToBob).is_err());
        assert!(steering_closed_form(&bad, Direction::AliceToBob).is_err());
    }
}
