//! Property-based invariants.

use num_complex::Complex64;
use proptest::prelude::*;

use ptmcom_core::model::{solve_steady_states_with_drives, SystemParams};
use ptmcom_core::numerics::{
    char_poly, cubic_residual, eigenvalues_general, lyapunov_residual, routh_hurwitz_stable,
    solve_cubic_real, solve_lyapunov, Matrix,
};
use ptmcom_core::{log_negativity, Parameter, SweepAxis};

fn matrix_strategy(n: usize) -> impl Strategy<Value = Matrix> {
    proptest::collection::vec(-1.0f64..1.0, n * n)
        .prop_map(move |data| Matrix::from_row_major(n, n, data).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    /// Eigenvalue completeness: the spectrum sums to the trace and multiplies
    /// to the determinant.
    #[test]
    fn eigenvalues_sum_to_trace_and_multiply_to_det(m in matrix_strategy(8)) {
        let eigs = eigenvalues_general(&m).unwrap();
        let sum: Complex64 = eigs.iter().sum();
        let norm = m.frobenius_norm().max(1.0);
        prop_assert!((sum.re - m.trace()).abs() <= 1e-9 * norm);
        prop_assert!(sum.im.abs() <= 1e-9 * norm);

        let prod: Complex64 = eigs.iter().product();
        let det = m.determinant();
        let scale = det.abs().max(norm.powi(8) * 1e-6).max(1e-12);
        prop_assert!((prod - Complex64::new(det, 0.0)).norm() <= 1e-7 * scale,
            "prod {prod} vs det {det}");
    }

    /// Every returned cubic root satisfies the polynomial to the documented
    /// residual bound.
    #[test]
    fn cubic_roots_have_small_residuals(
        c3 in -10.0f64..10.0,
        c2 in -10.0f64..10.0,
        c1 in -10.0f64..10.0,
        c0 in -10.0f64..10.0,
    ) {
        prop_assume!(c3.abs() + c2.abs() + c1.abs() + c0.abs() > 1e-12);
        let roots = solve_cubic_real(c3, c2, c1, c0).unwrap();
        for r in &roots.roots {
            prop_assert!(cubic_residual(*r, c3, c2, c1, c0) <= 1e-9);
        }
        if c3 != 0.0 {
            prop_assert_eq!(roots.roots.len(), 3);
        }
    }

    /// Lyapunov residual bound on Gershgorin-stable matrices.
    #[test]
    fn lyapunov_residual_bound(m0 in matrix_strategy(8), diag in proptest::collection::vec(0.01f64..2.0, 8)) {
        let mut m = m0.clone();
        for i in 0..8 {
            let row: f64 = (0..8).map(|j| m0[(i, j)].abs()).sum();
            m[(i, i)] -= row + 0.01;
        }
        let d = Matrix::from_diag(&diag);
        let v = solve_lyapunov(&m, &d).unwrap();
        let r = lyapunov_residual(&m, &v, &d).frobenius_norm();
        prop_assert!(r <= 1e-10 * d.frobenius_norm().max(1.0), "residual {r}");
    }

    /// Routh-Hurwitz agrees with the eigenvalue route outside the marginal
    /// band.
    #[test]
    fn routh_agrees_with_spectral_abscissa(m0 in matrix_strategy(6), shift in -0.5f64..2.0) {
        let m = Matrix::from_fn(6, 6, |i, j| m0[(i, j)] - if i == j { shift } else { 0.0 });
        let max_re = eigenvalues_general(&m).unwrap().iter().map(|l| l.re)
            .fold(f64::NEG_INFINITY, f64::max);
        prop_assume!(max_re.abs() > 1e-9);
        let verdict = routh_hurwitz_stable(&char_poly(&m).unwrap()).unwrap();
        prop_assume!(!verdict.marginal);
        prop_assert_eq!(verdict.stable, max_re < 0.0);
    }

    /// E_N is non-negative and invariant under independent single-mode
    /// phase rotations.
    #[test]
    fn negativity_nonnegative_and_rotation_invariant(
        n1 in 0.0f64..1.0,
        n2 in 0.0f64..1.0,
        r in -0.9f64..0.9,
        th1 in 0.0f64..std::f64::consts::TAU,
        th2 in 0.0f64..std::f64::consts::TAU,
    ) {
        // Two-mode squeezed thermal covariance.
        let ch = (2.0 * r).cosh();
        let sh = (2.0 * r).sinh();
        let a = (n1 + 0.5) * ch;
        let b = (n2 + 0.5) * ch;
        let c = ((n1 + n2 + 1.0) / 2.0) * sh;
        let mut v = Matrix::zeros(4, 4);
        v[(0, 0)] = a; v[(1, 1)] = a;
        v[(2, 2)] = b; v[(3, 3)] = b;
        v[(0, 2)] = c; v[(2, 0)] = c;
        v[(1, 3)] = -c; v[(3, 1)] = -c;

        let e = log_negativity(&v).unwrap();
        prop_assert!(e >= 0.0);

        // Local rotations leave every negativity unchanged.
        let rot = |t: f64| {
            let (c, s) = (t.cos(), t.sin());
            [[c, s], [-s, c]]
        };
        let (r1, r2) = (rot(th1), rot(th2));
        let mut s4 = Matrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                s4[(i, j)] = r1[i][j];
                s4[(i + 2, j + 2)] = r2[i][j];
            }
        }
        let v_rot = s4.matmul(&v).matmul(&s4.transpose());
        let e_rot = log_negativity(&v_rot).unwrap();
        prop_assert!((e - e_rot).abs() <= 1e-10 * e.max(1.0), "{e} vs {e_rot}");
    }

    /// Multiplying both drives by a common phase leaves intensity, effective
    /// detuning, and drive-enhanced couplings unchanged.
    #[test]
    fn drive_phase_gauge_invariance(psi in 0.0f64..std::f64::consts::TAU, kc in -0.2f64..0.12) {
        let p = SystemParams { kappa_c: kc, ..Default::default() };
        let phase = Complex64::from_polar(1.0, psi);
        let plain = solve_steady_states_with_drives(
            &p,
            Complex64::new(p.drive_a, 0.0),
            Complex64::new(p.drive_c, 0.0),
        ).unwrap();
        let rotated = solve_steady_states_with_drives(
            &p,
            Complex64::new(p.drive_a, 0.0) * phase,
            Complex64::new(p.drive_c, 0.0) * phase,
        ).unwrap();
        prop_assert_eq!(plain.len(), rotated.len());
        for (a, b) in plain.iter().zip(&rotated) {
            prop_assert!((a.intensity_c - b.intensity_c).abs() <= 1e-9 * a.intensity_c.max(1.0));
            prop_assert!((a.effective_detuning_c - b.effective_detuning_c).abs() <= 1e-9);
            prop_assert!((a.alpha_c.norm() - b.alpha_c.norm()).abs()
                <= 1e-9 * a.alpha_c.norm().max(1.0));
            // The amplitudes themselves rotate by the common phase.
            prop_assert!((a.alpha_c * phase - b.alpha_c).norm()
                <= 1e-9 * a.alpha_c.norm().max(1.0));
        }
    }

    /// Axis realization: point counts and interior monotonicity.
    #[test]
    fn axis_grids_are_monotone(start in -3.0f64..3.0, width in 0.1f64..5.0, points in 2usize..40) {
        let ax = SweepAxis::new(Parameter::DeltaC, start, start + width, points);
        let vals = ax.realize().unwrap().values;
        prop_assert_eq!(vals.len(), points);
        prop_assert!(vals.windows(2).all(|w| w[1] > w[0]));
        prop_assert!((vals[0] - start).abs() < 1e-12);
        prop_assert!((vals[points - 1] - (start + width)).abs() < 1e-12);
    }
}

/// Downstream gauge invariance: common drive phase leaves every negativity
/// unchanged (deterministic spot check on a handful of phases).
#[test]
fn drive_phase_leaves_channels_unchanged() {
    use ptmcom_core::model::build_linearized;
    use ptmcom_core::spectra::full_stability;
    use ptmcom_core::{entanglement, ChannelSet};

    let p = SystemParams { kappa_c: 0.02, ..Default::default() };
    let channels_for_phase = |psi: f64| -> ChannelSet {
        let phase = Complex64::from_polar(1.0, psi);
        let list = solve_steady_states_with_drives(
            &p,
            Complex64::new(p.drive_a, 0.0) * phase,
            Complex64::new(p.drive_c, 0.0) * phase,
        )
        .unwrap();
        // Largest stable branch, as in the standard pipeline.
        for ss in list.iter().rev() {
            let ls = build_linearized(&p, ss).unwrap();
            if full_stability(&ls).unwrap().stable {
                let cov = entanglement::steady_covariance(&ls).unwrap();
                return ChannelSet::from_covariance(&cov).unwrap();
            }
        }
        panic!("no stable branch");
    };

    let base = channels_for_phase(0.0);
    for psi in [0.4, 1.2, 2.8, 4.9] {
        let rot = channels_for_phase(psi);
        for (a, b) in base.primary_channels().iter().zip(rot.primary_channels()) {
            assert!((a - b).abs() <= 1e-9 * a.max(1.0), "channel changed under gauge: {a} vs {b}");
        }
    }
}
