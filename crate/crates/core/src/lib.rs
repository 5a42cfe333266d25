//! Simulation engine for a gain-loss double-cavity molecular optomechanical
//! model: mean-field steady states and bistability, exceptional points of
//! the two-mode optical subsystem, full-system stability, steady-state
//! covariances, and bipartite logarithmic negativity, plus a deterministic
//! parallel sweep engine that produces figure-style data grids.
//!
//! All rates are dimensionless in units of the vibrational frequency;
//! temperature (kelvin) and the absolute vibrational frequency are the only
//! absolute-unit inputs, and they enter only through the thermal phonon
//! occupation.

pub mod entanglement;
pub mod error;
pub mod model;
pub mod numerics;
pub mod spectra;
pub mod sweep;

pub use entanglement::{
    all_channels, extract_bipartite, log_negativity, steady_covariance, ChannelReport, ChannelSet,
    CovarianceMatrix, Mode,
};
pub use error::{Error, Result};
pub use model::{
    build_linearized, cubic_coefficients, integrate_mean_field, mean_field_rhs,
    solve_steady_state_opa, solve_steady_states, Branch, LinearizedSystem, Parameter,
    PhysicalConstants, SteadyState, SystemParams,
};
pub use spectra::{
    exceptional_point_j1, full_stability, select_operating_point, stability_map,
    two_mode_eigenvalues, OperatingPoint, PhaseRegion, PtPhase, StabilityGrid, StabilityVerdict,
};
pub use sweep::{
    opa_comparison, run_sweep_1d, run_sweep_2d, AxisScale, OpaComparison, SweepAxis,
    SweepQuantity, SweepRecord, SweepResult,
};
