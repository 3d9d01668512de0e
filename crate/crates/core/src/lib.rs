//! Secure quantum teleportation of coherent states through a two-mode
//! squeezed vacuum that decoheres in a common squeezed thermal reservoir.
//!
//! The pipeline is
//! [`dynamics`] (covariance at time `t`) →
//! [`teleportation`] (fidelity) and [`steering`] (two-way steerability) →
//! [`analysis`] (figure of merit `L`, time windows, parameter sweeps).

pub mod analysis;
pub mod bath;
pub mod dd;
pub mod dynamics;
pub mod error;
pub mod gaussian;
pub mod steering;
pub mod teleportation;

pub use analysis::{
    metrics_of, sqt_metrics, sqt_window, sweep_2d, Axis, Parameter, PointParams, RegionMap, SqtMetrics, TimeWindow,
};
pub use bath::BathParams;
pub use dynamics::{initial_tmsv, EvolutionScenario};
pub use error::{Result, SqtError};
pub use gaussian::{Blocks, Mat2, SingleModeGaussian, SymplecticForm, SymplecticSpectrum, TwoModeCovariance};
pub use steering::{steering_closed_form, steering_pair, steering_schur, Direction, SteeringPair};
pub use teleportation::{coherent_input, fidelity_coherent, fidelity_general, output_state, ReducedSigma};
