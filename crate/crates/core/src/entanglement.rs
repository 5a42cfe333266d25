//! Steady-state covariance matrix and logarithmic negativity of the six
//! bipartitions of modes {a, c, B1, B2}.
//!
//! Conventions: quadrature vector (x_a, y_a, x_c, y_c, q1, p1, q2, p2),
//! vacuum covariance = I/2, natural logarithm throughout.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{LinearizedSystem, SystemParams, DIM};
use crate::numerics::{
    eigenvalues_complex, lyapunov_residual, solve_lyapunov, CMatrix, Matrix,
    LYAPUNOV_RESIDUAL_TOL,
};
use crate::spectra::{full_stability, select_operating_point, StabilityVerdict};

/// The four bosonic modes, in covariance-matrix order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    CavityA,
    CavityC,
    Vib1,
    Vib2,
}

impl Mode {
    pub fn index(&self) -> usize {
        match self {
            Mode::CavityA => 0,
            Mode::CavityC => 1,
            Mode::Vib1 => 2,
            Mode::Vib2 => 3,
        }
    }
}

/// Steady-state second moments of the quadrature vector.
#[derive(Debug, Clone)]
pub struct CovarianceMatrix {
    pub entries: Matrix,
    /// Frobenius residual of the Lyapunov solve that produced it.
    pub residual: f64,
    /// Minimum eigenvalue of V + (i/2) Omega. Negative values beyond
    /// tolerance mean the uncertainty bound is not satisfied; the
    /// nonreciprocally coupled model (j1 != j2, bare asymmetric couplings
    /// with local noise) produces such covariances by construction, so this
    /// is recorded rather than rejected.
    pub physicality_deficit: f64,
}

impl CovarianceMatrix {
    /// Whether the uncertainty bound V + (i/2) Omega >= 0 holds within
    /// tolerance.
    pub fn is_physical(&self) -> bool {
        self.physicality_deficit >= -PHYSICALITY_TOL
    }
}

/// Tolerance on the minimum eigenvalue of V + (i/2) Omega.
const PHYSICALITY_TOL: f64 = 1e-9;

/// Clamp window for tiny negative arguments in the negativity formula.
const CLAMP_WINDOW: f64 = 1e-12;

/// Solve the steady-state Lyapunov equation for a stable linearized system.
///
/// Fails when the drift is not stable (the stationary covariance does not
/// exist). The uncertainty bound V + (i/2) Omega >= 0 is evaluated and
/// recorded in the result; it is violated by construction wherever the
/// asymmetric inter-cavity coupling makes the effective dynamics
/// non-Hermitian without a matching noise port, so it is a diagnostic, not
/// a rejection.
pub fn steady_covariance(ls: &LinearizedSystem) -> Result<CovarianceMatrix> {
    let verdict = full_stability(ls)?;
    if !verdict.stable {
        return Err(Error::Unstable(format!(
            "covariance undefined: max Re(eigenvalue) = {:.3e}",
            verdict.max_real_part
        )));
    }
    steady_covariance_unchecked(ls)
}

/// The Lyapunov solve without re-deriving the stability verdict (for
/// pipelines that already hold one).
pub fn steady_covariance_unchecked(ls: &LinearizedSystem) -> Result<CovarianceMatrix> {
    let mut v = solve_lyapunov(&ls.drift, &ls.diffusion)?;
    v.symmetrize();
    let residual = lyapunov_residual(&ls.drift, &v, &ls.diffusion).frobenius_norm();
    if residual > LYAPUNOV_RESIDUAL_TOL * ls.diffusion.frobenius_norm().max(1.0) {
        return Err(Error::Numeric(format!(
            "Lyapunov residual {residual:.3e} exceeds tolerance"
        )));
    }
    let physicality_deficit = min_physicality_eigenvalue(&v)?;
    Ok(CovarianceMatrix { entries: v, residual, physicality_deficit })
}

/// Minimum eigenvalue of the Hermitian matrix V + (i/2) Omega.
fn min_physicality_eigenvalue(v: &Matrix) -> Result<f64> {
    let mut h = CMatrix::zeros(DIM, DIM);
    for i in 0..DIM {
        for j in 0..DIM {
            h[(i, j)] = Complex64::new(v[(i, j)], 0.0);
        }
    }
    for k in 0..(DIM / 2) {
        let x = 2 * k;
        let y = 2 * k + 1;
        h[(x, y)] += Complex64::new(0.0, 0.5);
        h[(y, x)] += Complex64::new(0.0, -0.5);
    }
    let eigs = eigenvalues_complex(&h)?;
    Ok(eigs.iter().map(|l| l.re).fold(f64::INFINITY, f64::min))
}

/// Extract the 4x4 covariance of a mode pair, rows/columns in (i, j) order.
pub fn extract_bipartite(v: &CovarianceMatrix, mode_i: Mode, mode_j: Mode) -> Result<Matrix> {
    if mode_i == mode_j {
        return Err(Error::InvalidArgument("bipartite extraction needs two distinct modes".into()));
    }
    let bi = 2 * mode_i.index();
    let bj = 2 * mode_j.index();
    let sel = [bi, bi + 1, bj, bj + 1];
    Ok(Matrix::from_fn(4, 4, |r, c| v.entries[(sel[r], sel[c])]))
}

/// Logarithmic negativity of a two-mode covariance matrix (vacuum = I/2):
/// E_N = max(0, -ln(2 nu_minus)) with nu_minus the smallest symplectic
/// eigenvalue of the partial transpose.
pub fn log_negativity(v4: &Matrix) -> Result<f64> {
    if v4.rows() != 4 || v4.cols() != 4 {
        return Err(Error::Dimension(format!(
            "log negativity needs a 4x4 covariance, got {}x{}",
            v4.rows(),
            v4.cols()
        )));
    }
    let det_a = v4[(0, 0)] * v4[(1, 1)] - v4[(0, 1)] * v4[(1, 0)];
    let det_b = v4[(2, 2)] * v4[(3, 3)] - v4[(2, 3)] * v4[(3, 2)];
    let det_c = v4[(0, 2)] * v4[(1, 3)] - v4[(0, 3)] * v4[(1, 2)];
    let det_v = v4.determinant();

    let sigma = det_a + det_b - 2.0 * det_c;
    let scale = sigma.abs().max(det_v.abs()).max(1.0);
    let mut inner = sigma * sigma - 4.0 * det_v;
    if inner < 0.0 {
        if inner < -CLAMP_WINDOW * scale {
            return Err(Error::Numeric(format!(
                "unphysical bipartite covariance: sigma^2 - 4 det V = {inner:.3e}"
            )));
        }
        inner = 0.0;
    }
    let mut nu_sq = 0.5 * (sigma - inner.sqrt());
    if nu_sq < 0.0 {
        if nu_sq < -CLAMP_WINDOW {
            return Err(Error::Numeric(format!(
                "unphysical bipartite covariance: nu^2 = {nu_sq:.3e}"
            )));
        }
        nu_sq = 0.0;
    }
    let nu = nu_sq.sqrt();
    if nu <= 0.0 {
        return Err(Error::Numeric(
            "vanishing symplectic eigenvalue after partial transpose".into(),
        ));
    }
    Ok((-(2.0 * nu).ln()).max(0.0))
}

/// Negativities for all six bipartitions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSet {
    pub e_ac: f64,
    pub e_a_b1: f64,
    pub e_c_b2: f64,
    pub e_b1_b2: f64,
    pub e_a_b2: f64,
    pub e_c_b1: f64,
}

impl ChannelSet {
    pub const PAIRS: [(Mode, Mode); 6] = [
        (Mode::CavityA, Mode::CavityC),
        (Mode::CavityA, Mode::Vib1),
        (Mode::CavityC, Mode::Vib2),
        (Mode::Vib1, Mode::Vib2),
        (Mode::CavityA, Mode::Vib2),
        (Mode::CavityC, Mode::Vib1),
    ];

    pub fn from_covariance(v: &CovarianceMatrix) -> Result<ChannelSet> {
        let mut vals = [0.0; 6];
        for (k, (i, j)) in Self::PAIRS.iter().enumerate() {
            vals[k] = log_negativity(&extract_bipartite(v, *i, *j)?)?;
        }
        Ok(ChannelSet {
            e_ac: vals[0],
            e_a_b1: vals[1],
            e_c_b2: vals[2],
            e_b1_b2: vals[3],
            e_a_b2: vals[4],
            e_c_b1: vals[5],
        })
    }

    /// The four channels reported by the reference analysis.
    pub fn primary_channels(&self) -> [f64; 4] {
        [self.e_ac, self.e_a_b1, self.e_c_b2, self.e_b1_b2]
    }
}

/// Full point evaluation: steady state, stability, and (when stable) the
/// channel set. Unstable points carry a verdict and no channels.
#[derive(Debug, Clone)]
pub struct ChannelReport {
    pub verdict: StabilityVerdict,
    pub channels: Option<ChannelSet>,
    pub intensity_c: f64,
    pub effective_detuning_c: f64,
    pub branch_count: usize,
    pub covariance_residual: Option<f64>,
    pub physicality_deficit: Option<f64>,
}

/// Pipeline: steady state -> branch selection -> stability -> covariance ->
/// six negativities.
pub fn all_channels(p: &SystemParams) -> Result<ChannelReport> {
    let point = select_operating_point(p)?;
    let mut report = ChannelReport {
        verdict: point.verdict,
        channels: None,
        intensity_c: point.steady.intensity_c,
        effective_detuning_c: point.steady.effective_detuning_c,
        branch_count: point.branch_count,
        covariance_residual: None,
        physicality_deficit: None,
    };
    if report.verdict.stable {
        let cov = steady_covariance_unchecked(&point.linearized)?;
        report.channels = Some(ChannelSet::from_covariance(&cov)?);
        report.covariance_residual = Some(cov.residual);
        report.physicality_deficit = Some(cov.physicality_deficit);
    }
    Ok(report)
}
