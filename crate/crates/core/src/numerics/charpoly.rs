//! Characteristic polynomial by the Faddeev-LeVerrier recursion.

use crate::error::{Error, Result};
use crate::numerics::matrix::Matrix;

pub const MAX_CHARPOLY_DIM: usize = 8;

/// Monic coefficients of det(lambda I - m), descending powers:
/// `[1, a_{n-1}, ..., a_0]`.
pub fn char_poly(m: &Matrix) -> Result<Vec<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n > MAX_CHARPOLY_DIM {
        return Err(Error::Dimension(format!(
            "characteristic polynomial supports dimension <= {MAX_CHARPOLY_DIM}, got {n}"
        )));
    }
    let mut coeffs = vec![1.0];
    if n == 0 {
        return Ok(coeffs);
    }
    // M_1 = A, c_1 = -tr(M_1); M_k = A (M_{k-1} + c_{k-1} I), c_k = -tr(M_k)/k.
    let mut mk = m.clone();
    let mut ck = -mk.trace();
    coeffs.push(ck);
    for k in 2..=n {
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[(i, i)] += ck;
        }
        mk = m.matmul(&shifted);
        ck = -mk.trace() / k as f64;
        coeffs.push(ck);
    }
    Ok(coeffs)
}

/// Evaluate a real-coefficient polynomial (descending powers) at a complex point.
pub fn eval_poly(coeffs: &[f64], x: num_complex::Complex64) -> num_complex::Complex64 {
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for &c in coeffs {
        acc = acc * x + c;
    }
    acc
}
