//! Self-contained dense linear algebra for small systems: general complex
//! eigenvalues, real cubic roots, characteristic polynomials, the
//! Routh-Hurwitz array, and Lyapunov solves.
//!
//! Everything here is a pure function on immutable inputs and safe to call
//! concurrently.

mod charpoly;
mod cubic;
mod eigen;
mod linsolve;
mod lyapunov;
mod matrix;
mod routh;

pub use charpoly::{char_poly, eval_poly, MAX_CHARPOLY_DIM};
pub use cubic::{cubic_residual, solve_cubic_real, CubicRoots};
pub use eigen::{eigenvalues_complex, eigenvalues_general, sort_spectrum, MAX_EIGEN_DIM};
pub use linsolve::LuFactors;
pub use lyapunov::{residual as lyapunov_residual, solve_lyapunov, LYAPUNOV_RESIDUAL_TOL};
pub use matrix::{CMatrix, Matrix};
pub use routh::{routh_hurwitz_stable, RouthVerdict};
