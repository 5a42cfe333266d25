//! Continuous Lyapunov equation M V + V M^T = -D for small dense systems.
//!
//! The n x n problem is vectorized into an n^2 x n^2 linear system
//! (I (x) M + M (x) I) vec(V) = -vec(D) and solved by pivoted elimination,
//! followed by residual-driven iterative refinement. For n = 8 the 64 x 64
//! solve is exact to working precision.

use crate::error::{Error, Result};
use crate::numerics::linsolve::LuFactors;
use crate::numerics::matrix::Matrix;

/// Relative residual target: ||MV + VM^T + D||_F <= RESIDUAL_TOL * max(1, ||D||_F).
pub const LYAPUNOV_RESIDUAL_TOL: f64 = 1e-10;

/// Solve M V + V M^T = -D for symmetric V.
///
/// The caller is responsible for M being Hurwitz-stable (every eigenvalue
/// pair summing to a nonzero value); a singular vectorized system is
/// reported as a no-unique-solution error.
pub fn solve_lyapunov(m: &Matrix, d: &Matrix) -> Result<Matrix> {
    if !m.is_square() || !d.is_square() || m.rows() != d.rows() {
        return Err(Error::Dimension(format!(
            "Lyapunov solve needs matching square matrices, got {}x{} and {}x{}",
            m.rows(),
            m.cols(),
            d.rows(),
            d.cols()
        )));
    }
    let n = m.rows();
    let nn = n * n;

    // Coefficient of V[k,l] in equation (i,j): M[i,k] delta_{jl} + M[j,l] delta_{ik}.
    let mut a = vec![0.0; nn * nn];
    for i in 0..n {
        for j in 0..n {
            let eq = i * n + j;
            for k in 0..n {
                a[eq * nn + (k * n + j)] += m[(i, k)];
            }
            for l in 0..n {
                a[eq * nn + (i * n + l)] += m[(j, l)];
            }
        }
    }
    let lu = LuFactors::factor(&a, nn).map_err(|_| {
        Error::Numeric("Lyapunov system is singular (an eigenvalue pair of M sums to zero)".into())
    })?;

    let neg_d: Vec<f64> = (0..nn).map(|idx| -d[(idx / n, idx % n)]).collect();
    let mut v_flat = lu.solve(&neg_d);

    // Iterative refinement on the residual R = -(M V + V M^T + D).
    let d_norm = d.frobenius_norm().max(1.0);
    for _ in 0..3 {
        let v = Matrix::from_fn(n, n, |i, j| v_flat[i * n + j]);
        let r = residual(m, &v, d);
        if r.frobenius_norm() <= 0.25 * LYAPUNOV_RESIDUAL_TOL * d_norm {
            break;
        }
        let rhs: Vec<f64> = (0..nn).map(|idx| -r[(idx / n, idx % n)]).collect();
        let corr = lu.solve(&rhs);
        for (v, c) in v_flat.iter_mut().zip(&corr) {
            *v += c;
        }
    }

    let mut v = Matrix::from_fn(n, n, |i, j| v_flat[i * n + j]);
    v.symmetrize();
    Ok(v)
}

/// M V + V M^T + D.
pub fn residual(m: &Matrix, v: &Matrix, d: &Matrix) -> Matrix {
    m.matmul(v).add(&v.matmul(&m.transpose())).add(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_balance() {
        // m = -I2, d = I2 -> V = I2 / 2
        let m = Matrix::from_diag(&[-1.0, -1.0]);
        let d = Matrix::identity(2);
        let v = solve_lyapunov(&m, &d).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 0.5 } else { 0.0 };
                assert!((v[(i, j)] - want).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn decoupled_modes() {
        let m = Matrix::from_diag(&[-1.0, -2.0]);
        let d = Matrix::from_diag(&[2.0, 4.0]);
        let v = solve_lyapunov(&m, &d).unwrap();
        assert!((v[(0, 0)] - 1.0).abs() < 1e-14);
        assert!((v[(1, 1)] - 1.0).abs() < 1e-14);
        assert!(v[(0, 1)].abs() < 1e-14);
    }

    #[test]
    fn eigenvalue_pair_summing_to_zero_is_singular() {
        // Eigenvalues +1 and -1 sum to zero across the pair.
        let m = Matrix::from_diag(&[1.0, -1.0]);
        let d = Matrix::identity(2);
        assert!(solve_lyapunov(&m, &d).is_err());
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let m = Matrix::zeros(2, 2);
        let d = Matrix::zeros(3, 3);
        assert!(matches!(solve_lyapunov(&m, &d), Err(Error::Dimension(_))));
    }
}
