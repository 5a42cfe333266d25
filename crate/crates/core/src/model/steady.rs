//! Mean-field steady states of the driven double-cavity model, including
//! the bistability cubic and the parametric-drive variant.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::params::SystemParams;

/// Position of a steady-state branch in the intensity ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Lower,
    Middle,
    Upper,
    Unique,
}

impl Branch {
    pub fn label(&self) -> &'static str {
        match self {
            Branch::Lower => "lower",
            Branch::Middle => "middle",
            Branch::Upper => "upper",
            Branch::Unique => "unique",
        }
    }
}

/// One mean-field operating point.
#[derive(Debug, Clone)]
pub struct SteadyState {
    pub alpha_a: Complex64,
    pub alpha_c: Complex64,
    pub beta_1: Complex64,
    pub beta_2: Complex64,
    /// Intracavity intensity of the active cavity, |alpha_c|^2.
    pub intensity_c: f64,
    /// Effective active-cavity detuning after the vibrational back-action shift.
    pub effective_detuning_c: f64,
    pub branch: Branch,
    /// Max-norm of the mean-field equations at this point.
    pub residual: f64,
}

impl SteadyState {
    /// Mean values as the 8 real components
    /// (Re a, Im a, Re c, Im c, Re b1, Im b1, Re b2, Im b2).
    pub fn state_vector(&self) -> [f64; 8] {
        [
            self.alpha_a.re,
            self.alpha_a.im,
            self.alpha_c.re,
            self.alpha_c.im,
            self.beta_1.re,
            self.beta_1.im,
            self.beta_2.re,
            self.beta_2.im,
        ]
    }

    /// The same point expressed in the frame where the active-cavity
    /// amplitude is real and non-negative (both optical modes rotated by a
    /// common phase; drives rotate along and do not enter the linearized
    /// dynamics). In this frame the drift matrix is the exact Jacobian of
    /// the mean-field flow.
    pub fn canonical_state_vector(&self) -> [f64; 8] {
        let phase = if self.alpha_c.norm() > 0.0 {
            self.alpha_c / self.alpha_c.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let rot = phase.conj();
        let aa = self.alpha_a * rot;
        let ac = Complex64::new(self.alpha_c.norm(), 0.0);
        [
            aa.re,
            aa.im,
            ac.re,
            ac.im,
            self.beta_1.re,
            self.beta_1.im,
            self.beta_2.re,
            self.beta_2.im,
        ]
    }
}

/// Vibrational back-action weight: the effective detuning is
/// delta_c - 2 I_c * backaction_weight(p).
pub(crate) fn backaction_weight(p: &SystemParams) -> f64 {
    let (g1, g2) = p.collective_couplings();
    g1 * g1 / (1.0 + p.gamma_1 * p.gamma_1) + g2 * g2 / (1.0 + p.gamma_2 * p.gamma_2)
}

/// Coefficients (c3, c2, c1, c0) of the intensity cubic
/// c3 I^3 + c2 I^2 + c1 I + c0 = 0 for the active-cavity intensity.
///
/// Valid with the parametric drive disabled.
pub fn cubic_coefficients(p: &SystemParams) -> (f64, f64, f64, f64) {
    let (g1, g2) = p.collective_couplings();
    let chi1p = 1.0 + p.gamma_1 * p.gamma_1;
    let chi1pp = 1.0 + p.gamma_2 * p.gamma_2;
    let chi2 = p.delta_c * p.kappa_a - p.delta_a * p.kappa_c;
    let chi3 = 2.0 * g1 * g1 * p.delta_a / chi1p;
    let chi4 = 2.0 * g1 * g1 * p.kappa_a / chi1p;
    let chi5 = 2.0 * g2 * g2 * p.delta_a / chi1pp;
    let chi6 = 2.0 * g2 * g2 * p.kappa_a / chi1pp;
    let chi7 = -p.delta_c * p.delta_a - p.kappa_c * p.kappa_a + p.j1 * p.j2;
    let zeta3 = p.drive_c * p.drive_c * (p.delta_a * p.delta_a + p.kappa_a * p.kappa_a)
        - 2.0 * p.drive_c * p.drive_a * p.delta_a * p.j2
        + p.j2 * p.j2 * p.drive_a * p.drive_a;
    let zeta4 = chi3 + chi5;
    let zeta5 = chi4 + chi6;
    (
        zeta5 * zeta5 + zeta4 * zeta4,
        2.0 * (chi7 * zeta4 - chi2 * zeta5),
        chi7 * chi7 + chi2 * chi2,
        -zeta3,
    )
}

/// Reconstruct the full amplitude set from an intensity root, with complex
/// drive amplitudes (the phase freedom is exercised by gauge tests).
fn amplitudes_from_intensity(
    p: &SystemParams,
    ea: Complex64,
    ec: Complex64,
    intensity: f64,
) -> (Complex64, Complex64, Complex64, Complex64, f64) {
    let (g1, g2) = p.collective_couplings();
    let dct = p.delta_c - 2.0 * intensity * backaction_weight(p);
    let da = Complex64::new(p.kappa_a, p.delta_a);
    let dc = Complex64::new(-p.kappa_c, dct);
    let i = Complex64::new(0.0, 1.0);
    let alpha_c = (ec * da - i * p.j2 * ea) / (dc * da + p.j1 * p.j2);
    let alpha_a = (ea - i * p.j1 * alpha_c) / da;
    let beta_1 = -i * g1 * intensity / Complex64::new(p.gamma_1, 1.0);
    let beta_2 = -i * g2 * intensity / Complex64::new(p.gamma_2, 1.0);
    (alpha_a, alpha_c, beta_1, beta_2, dct)
}

const SELF_CONSISTENCY_TOL: f64 = 1e-8;

/// Steady states with explicit complex drive amplitudes. The common drive
/// phase is a gauge freedom; this entry point exists so that can be checked.
pub fn solve_steady_states_with_drives(
    p: &SystemParams,
    ea: Complex64,
    ec: Complex64,
) -> Result<Vec<SteadyState>> {
    p.validate()?;
    if p.opa_enabled {
        return Err(Error::InvalidArgument(
            "the intensity cubic assumes the parametric drive is disabled".into(),
        ));
    }
    let (c3, c2, c1, c0) = cubic_coefficients(p);
    let cubic = crate::numerics::solve_cubic_real(c3, c2, c1, c0)?;
    let coeff_scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs()).max(1.0);

    let mut intensities: Vec<f64> = Vec::new();
    for root in &cubic.roots {
        let scale = root.norm().max(1.0);
        if root.im.abs() > 1e-9 * scale {
            continue;
        }
        if root.re < -1e-12 * scale {
            continue;
        }
        let val = root.re.max(0.0);
        // Collapse numerically equal roots only if identical to full precision;
        // genuine multiple roots still appear once per branch.
        if !intensities.iter().any(|x| (x - val).abs() <= f64::EPSILON * coeff_scale) {
            intensities.push(val);
        }
    }
    intensities.sort_by(f64::total_cmp);

    if intensities.is_empty() {
        return Err(Error::NoSteadyState(format!(
            "the intensity cubic has no real non-negative root (degree {})",
            cubic.degree
        )));
    }

    let n = intensities.len();
    let mut out = Vec::with_capacity(n);
    for (idx, &intensity) in intensities.iter().enumerate() {
        let (alpha_a, alpha_c, beta_1, beta_2, dct) =
            amplitudes_from_intensity(p, ea, ec, intensity);
        // Self-consistency: the reconstructed amplitude must reproduce the root.
        let err = (intensity - alpha_c.norm_sqr()).abs();
        if err > SELF_CONSISTENCY_TOL * intensity.max(1.0) {
            return Err(Error::Numeric(format!(
                "steady-state self-consistency failure: |I - |alpha_c|^2| = {err:.3e} at I = {intensity:.6e}"
            )));
        }
        let branch = match (n, idx) {
            (1, _) => Branch::Unique,
            (_, 0) => Branch::Lower,
            (k, i) if i + 1 == k => Branch::Upper,
            _ => Branch::Middle,
        };
        let mut ss = SteadyState {
            alpha_a,
            alpha_c,
            beta_1,
            beta_2,
            intensity_c: alpha_c.norm_sqr(),
            effective_detuning_c: dct,
            branch,
            residual: 0.0,
        };
        ss.residual = mean_field_residual(p, ea, ec, &ss);
        out.push(ss);
    }
    Ok(out)
}

/// All physical mean-field steady states, ordered by increasing intensity
/// and labeled lower/middle/upper (or unique).
pub fn solve_steady_states(p: &SystemParams) -> Result<Vec<SteadyState>> {
    solve_steady_states_with_drives(
        p,
        Complex64::new(p.drive_a, 0.0),
        Complex64::new(p.drive_c, 0.0),
    )
}

fn mean_field_residual(p: &SystemParams, ea: Complex64, ec: Complex64, ss: &SteadyState) -> f64 {
    let d = crate::model::dynamics::mean_field_rhs_with_drives(p, ea, ec, &ss.state_vector());
    d.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Reduced fixed-point map for the active-cavity amplitude with the
/// parametric drive: F(alpha_c) = 0 after eliminating alpha_a and beta_k.
fn opa_reduced_f(p: &SystemParams, ac: Complex64) -> Complex64 {
    let ea = Complex64::new(p.drive_a, 0.0);
    let ec = Complex64::new(p.drive_c, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let da = Complex64::new(p.kappa_a, p.delta_a);
    let dct = p.delta_c - 2.0 * ac.norm_sqr() * backaction_weight(p);
    let dc = Complex64::new(-p.kappa_c, dct);
    -dc * ac - i * p.j2 * (ea - i * p.j1 * ac) / da
        + ec
        + p.opa_gain * Complex64::from_polar(1.0, -p.opa_phase) * ac.conj()
}

/// 2x2 real Jacobian of the reduced map at ac.
fn opa_reduced_jacobian(p: &SystemParams, ac: Complex64) -> [[f64; 2]; 2] {
    let h = 1e-7 * ac.norm().max(1.0);
    let fx_p = opa_reduced_f(p, ac + h);
    let fx_m = opa_reduced_f(p, ac - h);
    let fy_p = opa_reduced_f(p, ac + Complex64::new(0.0, h));
    let fy_m = opa_reduced_f(p, ac - Complex64::new(0.0, h));
    let dx = (fx_p - fx_m) / (2.0 * h);
    let dy = (fy_p - fy_m) / (2.0 * h);
    [[dx.re, dy.re], [dx.im, dy.im]]
}

/// Steady states of the parametric-drive variant, found by damped Newton
/// iteration on (Re alpha_c, Im alpha_c) with multiple starts taken from the
/// cubic roots of the plain model.
pub fn solve_steady_state_opa(p: &SystemParams) -> Result<Vec<SteadyState>> {
    p.validate()?;
    if !p.opa_enabled {
        return Err(Error::InvalidArgument(
            "parametric solver called with opa_enabled = false".into(),
        ));
    }

    let mut plain = p.clone();
    plain.opa_enabled = false;
    let mut starts: Vec<Complex64> = match solve_steady_states(&plain) {
        Ok(list) => list.iter().map(|s| s.alpha_c).collect(),
        Err(_) => Vec::new(),
    };
    if starts.is_empty() {
        starts.push(Complex64::new(1.0, 0.0));
    }
    // A couple of perturbed starts guard against a basin boundary sitting
    // exactly on a cubic root.
    for extra in starts.clone() {
        starts.push(extra * 1.05 + Complex64::new(0.1, 0.1));
    }

    let drive_scale = p.drive_a.abs().max(p.drive_c.abs()).max(1.0);
    let mut solutions: Vec<Complex64> = Vec::new();
    for start in starts {
        if let Some(ac) = newton_2d(p, start, drive_scale) {
            if !solutions
                .iter()
                .any(|s| (s - ac).norm() <= 1e-7 * ac.norm().max(1.0))
            {
                solutions.push(ac);
            }
        }
    }
    if solutions.is_empty() {
        return Err(Error::NoSteadyState(
            "parametric Newton iteration did not converge from any start".into(),
        ));
    }

    solutions.sort_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()));
    let n = solutions.len();
    let ea = Complex64::new(p.drive_a, 0.0);
    let ec = Complex64::new(p.drive_c, 0.0);
    let mut out = Vec::with_capacity(n);
    for (idx, ac) in solutions.iter().enumerate() {
        let (g1, g2) = p.collective_couplings();
        let intensity = ac.norm_sqr();
        let dct = p.delta_c - 2.0 * intensity * backaction_weight(p);
        let da = Complex64::new(p.kappa_a, p.delta_a);
        let i = Complex64::new(0.0, 1.0);
        let alpha_a = (ea - i * p.j1 * ac) / da;
        let beta_1 = -i * g1 * intensity / Complex64::new(p.gamma_1, 1.0);
        let beta_2 = -i * g2 * intensity / Complex64::new(p.gamma_2, 1.0);
        let branch = match (n, idx) {
            (1, _) => Branch::Unique,
            (_, 0) => Branch::Lower,
            (k, i) if i + 1 == k => Branch::Upper,
            _ => Branch::Middle,
        };
        let mut ss = SteadyState {
            alpha_a,
            alpha_c: *ac,
            beta_1,
            beta_2,
            intensity_c: intensity,
            effective_detuning_c: dct,
            branch,
            residual: 0.0,
        };
        ss.residual = mean_field_residual(p, ea, ec, &ss);
        if ss.residual > SELF_CONSISTENCY_TOL * drive_scale {
            return Err(Error::Numeric(format!(
                "parametric steady state failed the residual check: {:.3e}",
                ss.residual
            )));
        }
        out.push(ss);
    }
    Ok(out)
}

fn newton_2d(p: &SystemParams, start: Complex64, scale: f64) -> Option<Complex64> {
    let tol = 1e-13 * scale;
    let mut ac = start;
    for _ in 0..200 {
        let f = opa_reduced_f(p, ac);
        if f.norm() <= tol {
            return Some(ac);
        }
        let j = opa_reduced_jacobian(p, ac);
        let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
        if det.abs() < 1e-300 {
            return None;
        }
        let dx = (-f.re * j[1][1] + f.im * j[0][1]) / det;
        let dy = (-j[0][0] * f.im + j[1][0] * f.re) / det;
        let step = Complex64::new(dx, dy);
        // Backtracking line search on |F|.
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            let cand = ac + t * step;
            if opa_reduced_f(p, cand).norm() < f.norm() {
                ac = cand;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    let f = opa_reduced_f(p, ac);
    (f.norm() <= tol).then_some(ac)
}
