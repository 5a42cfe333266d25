//! Drift/diffusion pair for quadrature fluctuations around a steady state.

use crate::error::Result;
use crate::model::params::{PhysicalConstants, SystemParams};
use crate::model::steady::SteadyState;
use crate::numerics::Matrix;

/// Quadrature ordering used everywhere: (x_a, y_a, x_c, y_c, q1, p1, q2, p2).
pub const DIM: usize = 8;

/// Linearized fluctuation dynamics at one operating point.
#[derive(Debug, Clone)]
pub struct LinearizedSystem {
    pub drift: Matrix,
    pub diffusion: Matrix,
    /// Drive-enhanced optomechanical couplings g_k |alpha_c|.
    pub g_tilde_1: f64,
    pub g_tilde_2: f64,
    pub n_th: f64,
}

/// Exact Jacobian of the mean-field flow at an arbitrary state vector.
///
/// The drift of the fluctuation dynamics equals this Jacobian; quadratures
/// differ from the mean values only by a uniform sqrt(2), which cancels.
pub fn drift_matrix_at(p: &SystemParams, state: &[f64; 8]) -> Matrix {
    let (g1, g2) = p.collective_couplings();
    let ac_re = state[2];
    let ac_im = state[3];
    let displacement = 2.0 * (g1 * state[4] + g2 * state[6]);
    let eff_detuning = p.delta_c + displacement;

    let mut m = Matrix::zeros(DIM, DIM);
    // Passive cavity.
    m[(0, 0)] = -p.kappa_a;
    m[(0, 1)] = p.delta_a;
    m[(0, 3)] = p.j1;
    m[(1, 0)] = -p.delta_a;
    m[(1, 1)] = -p.kappa_a;
    m[(1, 2)] = -p.j1;
    // Active cavity.
    m[(2, 1)] = p.j2;
    m[(2, 2)] = p.kappa_c;
    m[(2, 3)] = eff_detuning;
    m[(3, 0)] = -p.j2;
    m[(3, 2)] = -eff_detuning;
    m[(3, 3)] = p.kappa_c;
    // Optomechanical coupling, phase-exact at the given state.
    m[(2, 4)] = 2.0 * g1 * ac_im;
    m[(2, 6)] = 2.0 * g2 * ac_im;
    m[(3, 4)] = -2.0 * g1 * ac_re;
    m[(3, 6)] = -2.0 * g2 * ac_re;
    // Vibrational modes.
    m[(4, 4)] = -p.gamma_1;
    m[(4, 5)] = 1.0;
    m[(5, 2)] = -2.0 * g1 * ac_re;
    m[(5, 3)] = -2.0 * g1 * ac_im;
    m[(5, 4)] = -1.0;
    m[(5, 5)] = -p.gamma_1;
    m[(6, 6)] = -p.gamma_2;
    m[(6, 7)] = 1.0;
    m[(7, 2)] = -2.0 * g2 * ac_re;
    m[(7, 3)] = -2.0 * g2 * ac_im;
    m[(7, 6)] = -1.0;
    m[(7, 7)] = -p.gamma_2;

    if p.opa_enabled {
        let c = p.opa_gain * p.opa_phase.cos();
        let s = p.opa_gain * p.opa_phase.sin();
        m[(2, 2)] += c;
        m[(2, 3)] += -s;
        m[(3, 2)] += -s;
        m[(3, 3)] += -c;
    }
    m
}

/// Diagonal input-noise matrix. Optical entries carry the magnitude of the
/// respective rate (the noise strength of either a loss or a gain channel);
/// vibrational entries carry the thermal factor gamma (2 n_th + 1).
pub fn diffusion_matrix(p: &SystemParams, n_th: f64) -> Matrix {
    let opt_a = p.kappa_a.abs();
    let opt_c = p.kappa_c.abs();
    let th1 = p.gamma_1 * (2.0 * n_th + 1.0);
    let th2 = p.gamma_2 * (2.0 * n_th + 1.0);
    Matrix::from_diag(&[opt_a, opt_a, opt_c, opt_c, th1, th1, th2, th2])
}

/// Build the drift/diffusion pair at a steady state.
///
/// Without the parametric drive the drift is evaluated in the frame where
/// alpha_c is real and non-negative, which reproduces the canonical sparsity
/// pattern exactly. With the parametric drive the phase of alpha_c is
/// physical (the pump phase is fixed in the lab frame), so the Jacobian is
/// taken at the raw state and the optomechanical entries pick up the phase.
pub fn build_linearized(p: &SystemParams, ss: &SteadyState) -> Result<LinearizedSystem> {
    p.validate()?;
    let state = if p.opa_enabled { ss.state_vector() } else { ss.canonical_state_vector() };
    let mut drift = drift_matrix_at(p, &state);
    if !p.opa_enabled {
        // In the canonical frame the effective detuning reduces to the
        // steady-state value; enforce the identity to avoid drift between
        // the two computations of the same quantity.
        drift[(2, 3)] = ss.effective_detuning_c;
        drift[(3, 2)] = -ss.effective_detuning_c;
    }
    let n_th = p.thermal_occupation_with(&PhysicalConstants::default());
    let (g1, g2) = p.collective_couplings();
    let amp = ss.alpha_c.norm();
    Ok(LinearizedSystem {
        drift,
        diffusion: diffusion_matrix(p, n_th),
        g_tilde_1: g1 * amp,
        g_tilde_2: g2 * amp,
        n_th,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::dynamics::mean_field_rhs;
    use crate::model::steady::{solve_steady_states, Branch};
    use num_complex::Complex64;

    /// Central-difference Jacobian of the mean-field flow.
    fn numerical_jacobian(p: &SystemParams, state: &[f64; 8]) -> Matrix {
        let h = 1e-6;
        Matrix::from_fn(8, 8, |i, j| {
            let mut up = *state;
            let mut dn = *state;
            up[j] += h;
            dn[j] -= h;
            (mean_field_rhs(p, &up)[i] - mean_field_rhs(p, &dn)[i]) / (2.0 * h)
        })
    }

    #[test]
    fn decoupled_limit_block_structure() {
        let p = SystemParams {
            j1: 0.0,
            j2: 0.0,
            g_m: 0.0,
            drive_a: 0.0,
            drive_c: 0.0,
            ..Default::default()
        };
        let ss = &solve_steady_states(&p).unwrap()[0];
        let ls = build_linearized(&p, ss).unwrap();
        let m = &ls.drift;
        // Passive block [[-ka, da], [-da, -ka]].
        assert_eq!(m[(0, 0)], -p.kappa_a);
        assert_eq!(m[(0, 1)], p.delta_a);
        // Active block [[kc, dc], [-dc, kc]].
        assert_eq!(m[(2, 2)], p.kappa_c);
        assert_eq!(m[(2, 3)], p.delta_c);
        // Vibrational rotation-damping blocks.
        assert_eq!(m[(4, 4)], -p.gamma_1);
        assert_eq!(m[(4, 5)], 1.0);
        assert_eq!(m[(5, 4)], -1.0);
        // All couplings vanish.
        for (i, j) in [(0, 2), (2, 4), (3, 4), (5, 2), (7, 2)] {
            assert_eq!(m[(i, j)], 0.0);
        }
    }

    #[test]
    fn drift_matches_numerical_jacobian_on_all_branches() {
        let p = SystemParams::default();
        for ss in solve_steady_states(&p).unwrap() {
            let ls = build_linearized(&p, &ss).unwrap();
            let num = numerical_jacobian(&p, &ss.canonical_state_vector());
            for i in 0..8 {
                for j in 0..8 {
                    let want = num[(i, j)];
                    let got = ls.drift[(i, j)];
                    assert!(
                        (got - want).abs() <= 1e-6 * want.abs().max(1.0),
                        "entry ({i},{j}): {got} vs {want} on {:?}",
                        ss.branch
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_zero_pattern_is_exact() {
        let p = SystemParams::default();
        let ss = solve_steady_states(&p)
            .unwrap()
            .into_iter()
            .find(|s| s.branch == Branch::Lower)
            .unwrap();
        let ls = build_linearized(&p, &ss).unwrap();
        let zero_positions = [
            (0, 2), (0, 4), (0, 5), (0, 6), (0, 7),
            (1, 3), (1, 4), (1, 5), (1, 6), (1, 7),
            (2, 0), (2, 4), (2, 5), (2, 6), (2, 7),
            (3, 1), (3, 5), (3, 7),
            (4, 0), (4, 1), (4, 2), (4, 3), (4, 6), (4, 7),
            (5, 0), (5, 1), (5, 3), (5, 6), (5, 7),
            (6, 0), (6, 1), (6, 2), (6, 3), (6, 4), (6, 5),
            (7, 0), (7, 1), (7, 3), (7, 4), (7, 5),
        ];
        for (i, j) in zero_positions {
            assert_eq!(ls.drift[(i, j)], 0.0, "expected exact zero at ({i},{j})");
        }
        assert!(ls.g_tilde_1 > 0.0);
        assert_eq!(ls.drift[(3, 4)], -2.0 * ls.g_tilde_1);
        assert_eq!(ls.drift[(5, 2)], -2.0 * ls.g_tilde_1);
    }

    #[test]
    fn opa_drift_matches_numerical_jacobian_at_raw_state() {
        let p = SystemParams {
            opa_enabled: true,
            opa_gain: 0.2,
            opa_phase: std::f64::consts::FRAC_PI_2,
            kappa_a: 0.3,
            kappa_c: -0.3,
            ..Default::default()
        };
        for ss in crate::model::steady::solve_steady_state_opa(&p).unwrap() {
            let ls = build_linearized(&p, &ss).unwrap();
            let num = numerical_jacobian(&p, &ss.state_vector());
            for i in 0..8 {
                for j in 0..8 {
                    let want = num[(i, j)];
                    let got = ls.drift[(i, j)];
                    assert!(
                        (got - want).abs() <= 1e-6 * want.abs().max(1.0),
                        "entry ({i},{j}): {got} vs {want}"
                    );
                }
            }
        }
    }

    #[test]
    fn diffusion_entries_follow_rates_and_occupation() {
        let p = SystemParams { temperature: 700.0, ..Default::default() };
        let n = p.thermal_occupation();
        let d = diffusion_matrix(&p, n);
        assert_eq!(d[(0, 0)], p.kappa_a);
        assert_eq!(d[(2, 2)], p.kappa_c);
        assert!((d[(4, 4)] - p.gamma_1 * (2.0 * n + 1.0)).abs() < 1e-18);
        assert!((d[(6, 6)] - p.gamma_2 * (2.0 * n + 1.0)).abs() < 1e-18);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    assert_eq!(d[(i, j)], 0.0);
                }
            }
        }
        // A lossy second cavity still injects positive noise.
        let p = SystemParams { kappa_c: -0.3, ..Default::default() };
        let d = diffusion_matrix(&p, 0.0);
        assert_eq!(d[(2, 2)], 0.3);
    }

    #[test]
    fn gauge_rotation_preserves_g_tilde_and_detuning() {
        let p = SystemParams::default();
        let ss = &solve_steady_states(&p).unwrap()[0];
        let canon = ss.canonical_state_vector();
        let ac = Complex64::new(canon[2], canon[3]);
        assert!(ac.im.abs() < 1e-15);
        assert!(ac.re >= 0.0);
        assert!((ac.re - ss.alpha_c.norm()).abs() <= 1e-12 * ss.alpha_c.norm());
    }
}
