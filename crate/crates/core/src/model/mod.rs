//! Physical model: parameters, mean-field steady states, classical flow,
//! and the linearized fluctuation system.

mod dynamics;
mod linearize;
mod params;
mod steady;

pub use dynamics::{
    integrate_mean_field, mean_field_rhs, mean_field_rhs_with_drives, state_distance, Divergence,
    Trajectory,
};
pub use linearize::{build_linearized, diffusion_matrix, drift_matrix_at, LinearizedSystem, DIM};
pub use params::{Parameter, PhysicalConstants, SystemParams};
pub use steady::{
    cubic_coefficients, solve_steady_state_opa, solve_steady_states,
    solve_steady_states_with_drives, Branch, SteadyState,
};
