//! Routh-Hurwitz stability test on a real polynomial.

use crate::error::{Error, Result};

/// Outcome of the Routh array.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RouthVerdict {
    /// True iff every root has strictly negative real part (as decided by
    /// the array; not meaningful when `marginal` is set).
    pub stable: bool,
    /// A zero first-column pivot or an all-zero row was hit; the verdict
    /// used the epsilon-substitution convention and should be treated as
    /// a boundary case.
    pub marginal: bool,
}

/// Pivots smaller than this fraction of the (row-normalized) scale trigger
/// the epsilon substitution.
const PIVOT_EPS: f64 = 1e-12;

/// Apply the Routh-Hurwitz criterion to a monic real polynomial given in
/// descending powers, `[1, a_{n-1}, ..., a_0]`.
///
/// Zero pivots are replaced by a tiny positive epsilon and flagged as
/// marginal; an all-zero row (roots symmetric about the origin) is continued
/// with the derivative of the auxiliary polynomial and also flagged.
pub fn routh_hurwitz_stable(coeffs: &[f64]) -> Result<RouthVerdict> {
    if coeffs.len() < 2 {
        return Err(Error::InvalidArgument(
            "Routh-Hurwitz needs a polynomial of degree >= 1".into(),
        ));
    }
    if coeffs[0] == 0.0 {
        return Err(Error::InvalidArgument(
            "leading coefficient must be nonzero (monic expected)".into(),
        ));
    }
    if !coeffs.iter().all(|c| c.is_finite()) {
        return Err(Error::InvalidArgument("coefficients must be finite".into()));
    }
    let n = coeffs.len() - 1;
    // Normalize sign so the leading coefficient is positive; root locations
    // are unchanged.
    let sign = coeffs[0].signum();
    let coeffs: Vec<f64> = coeffs.iter().map(|c| c * sign).collect();

    let width = n / 2 + 1;
    let mut row_prev = vec![0.0; width];
    let mut row_curr = vec![0.0; width];
    for (i, c) in coeffs.iter().enumerate() {
        if i % 2 == 0 {
            row_prev[i / 2] = *c;
        } else {
            row_curr[i / 2] = *c;
        }
    }

    let mut marginal = false;
    let mut first_column = vec![row_prev[0]];
    let mut degree_left = n;

    while degree_left >= 1 {
        let scale = row_curr.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            // All-zero row: differentiate the auxiliary polynomial built
            // from the previous row. Its presence means a root pattern
            // symmetric about the origin, which can never be strictly
            // stable.
            marginal = true;
            let aux_degree = degree_left;
            for (k, v) in row_curr.iter_mut().enumerate() {
                let power = aux_degree as isize - 2 * k as isize;
                *v = if power > 0 { row_prev[k] * power as f64 } else { 0.0 };
            }
            if row_curr.iter().all(|x| *x == 0.0) {
                break;
            }
        }
        let mut pivot = row_curr[0];
        let scale = row_curr.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(1e-300);
        if pivot.abs() <= PIVOT_EPS * scale {
            marginal = true;
            pivot = PIVOT_EPS * scale;
            row_curr[0] = pivot;
        }
        first_column.push(pivot);
        // Next row: b_i = (pivot * prev[i+1] - prev[0] * curr[i+1]) / pivot.
        let mut next = vec![0.0; width];
        for i in 0..(width - 1) {
            next[i] = (pivot * row_prev[i + 1] - row_prev[0] * row_curr[i + 1]) / pivot;
        }
        // Row normalization keeps magnitudes tame without changing signs.
        let next_scale = next.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if next_scale > 0.0 {
            for x in next.iter_mut() {
                *x /= next_scale;
            }
        }
        row_prev = row_curr;
        row_curr = next;
        degree_left -= 1;
    }

    let sign_changes = first_column
        .windows(2)
        .filter(|w| w[0].signum() != w[1].signum())
        .count();
    Ok(RouthVerdict { stable: sign_changes == 0 && !marginal, marginal })
}
