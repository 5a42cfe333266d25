//! Exceptional-point analysis of the two-mode optical model and stability
//! verdicts for the full linearized system.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{
    build_linearized, solve_steady_state_opa, solve_steady_states, LinearizedSystem, Parameter,
    SteadyState, SystemParams,
};
use crate::numerics::{char_poly, eigenvalues_general, routh_hurwitz_stable};

/// Verdicts within this band of the imaginary axis are treated as marginal.
pub const MARGINAL_BAND: f64 = 1e-9;

/// Gain-loss phase of the two-mode optical model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseRegion {
    /// Discriminant > 0: distinct decay rates, common precession frequency.
    PreEp,
    /// Discriminant < 0: common decay rate, split frequencies.
    PostEp,
    /// |Discriminant| below tolerance: coalescence point.
    AtEp,
}

/// Closed-form two-mode spectrum and its phase classification.
#[derive(Debug, Clone, Copy)]
pub struct PtPhase {
    pub phase: PhaseRegion,
    pub discriminant: f64,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

const EP_DISCRIMINANT_TOL: f64 = 1e-12;

/// Eigenfrequencies of the reduced two-mode model at matched detunings:
/// lambda_pm = -i delta - (kappa_a - kappa_c)/2 +- sqrt((kappa_a + kappa_c)^2 - 4 j1 j2)/2.
pub fn two_mode_eigenvalues(delta: f64, kappa_a: f64, kappa_c: f64, j1: f64, j2: f64) -> PtPhase {
    let disc = (kappa_a + kappa_c) * (kappa_a + kappa_c) - 4.0 * j1 * j2;
    let root = Complex64::new(disc, 0.0).sqrt();
    let base = Complex64::new(-(kappa_a - kappa_c) / 2.0, -delta);
    let phase = if disc.abs() <= EP_DISCRIMINANT_TOL {
        PhaseRegion::AtEp
    } else if disc > 0.0 {
        PhaseRegion::PreEp
    } else {
        PhaseRegion::PostEp
    };
    PtPhase {
        phase,
        discriminant: disc,
        lambda_plus: base + 0.5 * root,
        lambda_minus: base - 0.5 * root,
    }
}

/// Forward coupling at which the two-mode eigenvalues coalesce:
/// j1 = (kappa_a + kappa_c)^2 / (4 j2).
pub fn exceptional_point_j1(kappa_a: f64, kappa_c: f64, j2: f64) -> Result<f64> {
    if j2 <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "no exceptional point for j2 <= 0 (got {j2}): the discriminant never vanishes"
        )));
    }
    Ok((kappa_a + kappa_c) * (kappa_a + kappa_c) / (4.0 * j2))
}

/// Stability of an 8x8 drift matrix.
#[derive(Debug, Clone)]
pub struct StabilityVerdict {
    pub stable: bool,
    /// |max_real_part| within the marginal band; excluded from pass/fail use.
    pub marginal: bool,
    pub max_real_part: f64,
    pub eigenvalues: Vec<Complex64>,
}

/// Eigenvalue-based stability verdict with a Routh-Hurwitz cross-check.
///
/// A disagreement between the two routes outside the marginal band is an
/// internal-consistency error, not a verdict.
pub fn full_stability(ls: &LinearizedSystem) -> Result<StabilityVerdict> {
    let eigenvalues = eigenvalues_general(&ls.drift)?;
    let max_real_part = eigenvalues.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    let marginal = max_real_part.abs() < MARGINAL_BAND;
    let stable = max_real_part < -MARGINAL_BAND;

    let routh = routh_hurwitz_stable(&char_poly(&ls.drift)?)?;
    if !marginal && !routh.marginal && routh.stable != stable {
        return Err(Error::Inconsistency(format!(
            "Routh-Hurwitz ({}) disagrees with the eigenvalue verdict ({}), max Re = {max_real_part:.3e}",
            routh.stable, stable
        )));
    }
    Ok(StabilityVerdict { stable, marginal, max_real_part, eigenvalues })
}

/// A selected operating point: steady state, linearization, and verdict.
#[derive(Debug, Clone)]
pub struct OperatingPoint {
    pub steady: SteadyState,
    pub linearized: LinearizedSystem,
    pub verdict: StabilityVerdict,
    /// Number of physical steady-state branches at these parameters.
    pub branch_count: usize,
}

/// Solve for steady states and pick the branch to operate on: the
/// largest-intensity stable branch when several coexist. When no branch is
/// stable the returned point carries the largest-intensity branch with its
/// (unstable) verdict.
pub fn select_operating_point(p: &SystemParams) -> Result<OperatingPoint> {
    let branches = if p.opa_enabled { solve_steady_state_opa(p)? } else { solve_steady_states(p)? };
    let branch_count = branches.len();
    let mut fallback: Option<OperatingPoint> = None;
    for steady in branches.into_iter().rev() {
        let linearized = build_linearized(p, &steady)?;
        let verdict = full_stability(&linearized)?;
        let point = OperatingPoint { steady, linearized, verdict, branch_count };
        if point.verdict.stable {
            return Ok(point);
        }
        if fallback.is_none() {
            fallback = Some(point);
        }
    }
    Ok(fallback.expect("at least one branch exists"))
}

/// One cell of a stability map.
#[derive(Debug, Clone)]
pub struct StabilityCell {
    pub value1: f64,
    pub value2: f64,
    pub stable: bool,
    pub marginal: bool,
    pub max_real_part: f64,
    /// Why an unstable verdict was reached when it was not a plain
    /// eigenvalue test (no steady state, invalid parameters).
    pub reason: String,
}

/// Row-major boolean stability map over two parameter grids.
#[derive(Debug, Clone)]
pub struct StabilityGrid {
    pub param1: Parameter,
    pub param2: Parameter,
    pub values1: Vec<f64>,
    pub values2: Vec<f64>,
    pub cells: Vec<StabilityCell>,
}

impl StabilityGrid {
    pub fn cell(&self, i1: usize, i2: usize) -> &StabilityCell {
        &self.cells[i1 * self.values2.len() + i2]
    }
}

/// Evaluate stability on a 2-D parameter grid. Cells where the model has no
/// physical steady state (or the parameters are invalid) are marked unstable
/// with a reason; they never abort the map.
pub fn stability_map(
    base: &SystemParams,
    axis1: (Parameter, &[f64]),
    axis2: (Parameter, &[f64]),
) -> Result<StabilityGrid> {
    if axis1.0 == axis2.0 {
        return Err(Error::InvalidArgument(format!(
            "stability map axes must target distinct parameters, both are '{}'",
            axis1.0.name()
        )));
    }
    let (p1, v1) = axis1;
    let (p2, v2) = axis2;
    let indices: Vec<(usize, usize)> =
        (0..v1.len()).flat_map(|i| (0..v2.len()).map(move |j| (i, j))).collect();
    let cells: Vec<StabilityCell> = indices
        .par_iter()
        .map(|&(i, j)| {
            let p = p2.apply(&p1.apply(base, v1[i]), v2[j]);
            evaluate_stability_cell(&p, v1[i], v2[j])
        })
        .collect();
    Ok(StabilityGrid { param1: p1, param2: p2, values1: v1.to_vec(), values2: v2.to_vec(), cells })
}

fn evaluate_stability_cell(p: &SystemParams, value1: f64, value2: f64) -> StabilityCell {
    match select_operating_point(p) {
        Ok(point) => StabilityCell {
            value1,
            value2,
            stable: point.verdict.stable,
            marginal: point.verdict.marginal,
            max_real_part: point.verdict.max_real_part,
            reason: String::new(),
        },
        Err(e) => StabilityCell {
            value1,
            value2,
            stable: false,
            marginal: false,
            max_real_part: f64::NAN,
            reason: e.to_string(),
        },
    }
}
