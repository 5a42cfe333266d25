//! Classical mean-field flow (noise-free expectation values) and a
//! fixed-step Runge-Kutta integrator used to validate branch stability.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::params::SystemParams;

/// Time derivatives of the 8 real mean values
/// (Re a, Im a, Re c, Im c, Re b1, Im b1, Re b2, Im b2).
pub fn mean_field_rhs(p: &SystemParams, state: &[f64; 8]) -> [f64; 8] {
    mean_field_rhs_with_drives(
        p,
        Complex64::new(p.drive_a, 0.0),
        Complex64::new(p.drive_c, 0.0),
        state,
    )
}

/// Same flow with explicit complex drive amplitudes (used by gauge tests).
pub fn mean_field_rhs_with_drives(
    p: &SystemParams,
    ea: Complex64,
    ec: Complex64,
    state: &[f64; 8],
) -> [f64; 8] {
    let aa = Complex64::new(state[0], state[1]);
    let ac = Complex64::new(state[2], state[3]);
    let b1 = Complex64::new(state[4], state[5]);
    let b2 = Complex64::new(state[6], state[7]);
    let (g1, g2) = p.collective_couplings();
    let i = Complex64::new(0.0, 1.0);

    let daa = -(i * p.delta_a + p.kappa_a) * aa - i * p.j1 * ac + ea;
    let displacement = 2.0 * (g1 * b1.re + g2 * b2.re);
    let mut dac = -(i * p.delta_c - p.kappa_c) * ac - i * displacement * ac - i * p.j2 * aa + ec;
    if p.opa_enabled {
        dac += p.opa_gain * Complex64::from_polar(1.0, -p.opa_phase) * ac.conj();
    }
    let intensity = ac.norm_sqr();
    let db1 = -(i + p.gamma_1) * b1 - i * g1 * intensity;
    let db2 = -(i + p.gamma_2) * b2 - i * g2 * intensity;

    [daa.re, daa.im, dac.re, dac.im, db1.re, db1.im, db2.re, db2.im]
}

/// A fixed-step trajectory. Sample thinning keeps memory bounded on long runs.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 8]>,
    pub final_state: [f64; 8],
}

/// Outcome of an integration that hit a non-finite state.
#[derive(Debug, Clone)]
pub struct Divergence {
    pub time: f64,
    pub last_finite: [f64; 8],
}

/// Classic fourth-order Runge-Kutta with fixed step; deterministic for a
/// given input.
///
/// Returns a divergence diagnostic (with the blow-up time) if the state
/// stops being finite.
pub fn integrate_mean_field(
    p: &SystemParams,
    initial: &[f64; 8],
    t_end: f64,
    dt: f64,
) -> Result<std::result::Result<Trajectory, Divergence>> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidArgument(format!("dt must be positive, got {dt}")));
    }
    if t_end < dt || !t_end.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "t_end must be at least one step, got t_end={t_end}, dt={dt}"
        )));
    }
    if !initial.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidArgument("initial state must be finite".into()));
    }

    let steps = (t_end / dt).round() as usize;
    let stride = (steps / 1000).max(1);
    let mut u = *initial;
    let mut times = Vec::with_capacity(steps / stride + 2);
    let mut states = Vec::with_capacity(steps / stride + 2);
    times.push(0.0);
    states.push(u);

    for k in 0..steps {
        let t = k as f64 * dt;
        let k1 = mean_field_rhs(p, &u);
        let k2 = mean_field_rhs(p, &add_scaled(&u, &k1, dt / 2.0));
        let k3 = mean_field_rhs(p, &add_scaled(&u, &k2, dt / 2.0));
        let k4 = mean_field_rhs(p, &add_scaled(&u, &k3, dt));
        let mut next = u;
        for j in 0..8 {
            next[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
        if !next.iter().all(|x| x.is_finite()) {
            return Ok(Err(Divergence { time: t + dt, last_finite: u }));
        }
        u = next;
        if (k + 1) % stride == 0 {
            times.push(t + dt);
            states.push(u);
        }
    }
    if *times.last().unwrap() < t_end {
        times.push(steps as f64 * dt);
        states.push(u);
    }
    Ok(Ok(Trajectory { times, states, final_state: u }))
}

fn add_scaled(u: &[f64; 8], k: &[f64; 8], s: f64) -> [f64; 8] {
    let mut out = *u;
    for j in 0..8 {
        out[j] += s * k[j];
    }
    out
}

pub fn state_distance(a: &[f64; 8], b: &[f64; 8]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::steady::solve_steady_states;

    #[test]
    fn zero_state_zero_drive_is_fixed() {
        let p = SystemParams { drive_a: 0.0, drive_c: 0.0, ..Default::default() };
        let d = mean_field_rhs(&p, &[0.0; 8]);
        assert!(d.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn steady_states_are_fixed_points() {
        let p = SystemParams::default();
        for ss in solve_steady_states(&p).unwrap() {
            let d = mean_field_rhs(&p, &ss.state_vector());
            let norm = d.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            assert!(norm <= 1e-8, "residual {norm} on branch {:?}", ss.branch);
        }
    }

    #[test]
    fn gain_only_mode_grows_exponentially() {
        // kappa_c > 0 with every other rate zeroed: |alpha_c| ~ e^{kappa_c t}.
        let p = SystemParams {
            kappa_a: 1.0,
            kappa_c: 0.5,
            delta_a: 0.0,
            delta_c: 0.0,
            j1: 0.0,
            j2: 0.0,
            g_m: 0.0,
            drive_a: 0.0,
            drive_c: 0.0,
            ..Default::default()
        };
        let init = [0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        let traj = integrate_mean_field(&p, &init, 2.0, 1e-3).unwrap().unwrap();
        let amp = Complex64::new(traj.final_state[2], traj.final_state[3]).norm();
        let want = (0.5f64 * 2.0).exp();
        assert!((amp - want).abs() < 1e-5 * want, "grew to {amp}, want {want}");
    }

    #[test]
    fn passive_undriven_system_decays_to_zero() {
        let p = SystemParams {
            kappa_c: -0.2,
            drive_a: 0.0,
            drive_c: 0.0,
            ..Default::default()
        };
        let init = [0.3, -0.1, 0.2, 0.4, 0.05, 0.0, -0.02, 0.01];
        // The vibrational part decays at gamma = 1e-4, so the horizon must
        // cover several 1/gamma.
        let traj = integrate_mean_field(&p, &init, 1.0e5, 0.1).unwrap().unwrap();
        let norm = state_distance(&traj.final_state, &[0.0; 8]);
        assert!(norm < 1e-4, "state norm {norm} after damping");
    }

    #[test]
    fn divergence_is_reported_not_panicked() {
        let p = SystemParams {
            kappa_c: 2.0,
            j1: 0.0,
            j2: 0.0,
            g_m: 0.0,
            drive_a: 0.0,
            drive_c: 1.0,
            ..Default::default()
        };
        let init = [0.0, 0.0, 1e150, 0.0, 0.0, 0.0, 0.0, 0.0];
        match integrate_mean_field(&p, &init, 400.0, 0.05).unwrap() {
            Err(div) => assert!(div.time > 0.0),
            Ok(traj) => panic!("expected divergence, got |u|={}", state_distance(&traj.final_state, &[0.0; 8])),
        }
    }

    #[test]
    fn bad_step_rejected() {
        let p = SystemParams::default();
        assert!(integrate_mean_field(&p, &[0.0; 8], 1.0, 0.0).is_err());
        assert!(integrate_mean_field(&p, &[0.0; 8], 0.0, 0.1).is_err());
    }
}
