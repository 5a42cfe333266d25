//! Eigenvalues of small dense general matrices.
//!
//! Balancing, Householder reduction to upper Hessenberg form, then shifted
//! QR iteration in complex arithmetic. Dimensions are capped at 16; this is
//! a robustness-over-speed solver for fluctuation spectra, not a LAPACK
//! replacement.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numerics::matrix::{CMatrix, Matrix};

pub const MAX_EIGEN_DIM: usize = 16;

/// Eigenvalues of a real square matrix, counted with multiplicity.
///
/// Returned sorted by descending real part, ties broken by descending
/// imaginary part.
pub fn eigenvalues_general(m: &Matrix) -> Result<Vec<Complex64>> {
    eigenvalues_complex(&m.to_complex())
}

/// Eigenvalues of a complex square matrix, counted with multiplicity.
pub fn eigenvalues_complex(m: &CMatrix) -> Result<Vec<Complex64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalue solver needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n > MAX_EIGEN_DIM {
        return Err(Error::Dimension(format!(
            "eigenvalue solver supports dimension <= {MAX_EIGEN_DIM}, got {n}"
        )));
    }
    let mut vals = match n {
        0 => Vec::new(),
        1 => vec![m[(0, 0)]],
        2 => {
            let (l1, l2) = eig2(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
            vec![l1, l2]
        }
        _ => {
            let mut h = m.clone();
            balance(&mut h);
            hessenberg(&mut h);
            qr_iterate(&mut h)?
        }
    };
    sort_spectrum(&mut vals);
    Ok(vals)
}

/// Ordering contract for returned spectra.
pub fn sort_spectrum(vals: &mut [Complex64]) {
    vals.sort_by(|a, b| b.re.total_cmp(&a.re).then(b.im.total_cmp(&a.im)));
}

/// Eigenvalues of a 2x2 complex matrix via the quadratic formula.
fn eig2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    // Pick the larger-magnitude root first, recover the other from the
    // determinant when possible to avoid cancellation.
    let r1 = if (half_tr + disc).norm() >= (half_tr - disc).norm() {
        half_tr + disc
    } else {
        half_tr - disc
    };
    let r2 = if r1.norm() > 0.0 { det / r1 } else { half_tr - disc };
    (r1, r2)
}

/// Parlett-Reinsch balancing (radix-2 diagonal similarity, no permutation).
fn balance(h: &mut CMatrix) {
    let n = h.rows();
    loop {
        let mut converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += h[(j, i)].norm();
                    r += h[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut c2 = c;
            let mut r2 = r;
            while c2 < r2 / 2.0 {
                c2 *= 2.0;
                r2 /= 2.0;
                f *= 2.0;
            }
            while c2 >= r2 * 2.0 {
                c2 /= 2.0;
                r2 *= 2.0;
                f /= 2.0;
            }
            if c2 + r2 < 0.95 * s && f != 1.0 {
                converged = false;
                // D^{-1} H D with D[i,i] = f: row i scaled by 1/f, column i by f.
                for j in 0..n {
                    h[(i, j)] /= f;
                }
                for j in 0..n {
                    h[(j, i)] *= f;
                }
            }
        }
        if converged {
            break;
        }
    }
}

/// Householder reduction to upper Hessenberg form (in place).
fn hessenberg(h: &mut CMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let mut norm2 = 0.0;
        for i in (k + 1)..n {
            norm2 += h[(i, k)].norm_sqr();
        }
        let x0 = h[(k + 1, k)];
        let norm = norm2.sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if x0.norm() > 0.0 { -(x0 / x0.norm()) * norm } else { Complex64::new(-norm, 0.0) };
        // v = x - alpha e1, normalized.
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = h[(i, k)];
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // H <- (I - 2 v v^H) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in (k + 1)..n {
                dot += v[i].conj() * h[(i, j)];
            }
            let dot = 2.0 * dot;
            for i in (k + 1)..n {
                let vi = v[i];
                h[(i, j)] -= vi * dot;
            }
        }
        // H <- H (I - 2 v v^H)
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += h[(i, j)] * v[j];
            }
            let dot = 2.0 * dot;
            for j in (k + 1)..n {
                let vj = v[j].conj();
                h[(i, j)] -= dot * vj;
            }
        }
        // Entries below the subdiagonal are zero by construction.
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Shifted QR iteration on an upper Hessenberg matrix; returns eigenvalues.
fn qr_iterate(h: &mut CMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let cap = 100 * n;
    let mut total_iters = 0usize;
    let mut vals = vec![Complex64::new(0.0, 0.0); n];
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut hi = n - 1;
    let mut stagnation = 0usize;

    loop {
        // Deflate converged trailing eigenvalues.
        while hi > 0 && subdiag_negligible(h, hi, scale) {
            h[(hi, hi - 1)] = Complex64::new(0.0, 0.0);
            vals[hi] = h[(hi, hi)];
            if hi == 1 {
                vals[0] = h[(0, 0)];
                return Ok(vals);
            }
            hi -= 1;
        }
        if hi == 0 {
            vals[0] = h[(0, 0)];
            return Ok(vals);
        }

        // Active block [lo..=hi].
        let mut lo = hi;
        while lo > 0 && !subdiag_negligible(h, lo, scale) {
            lo -= 1;
        }

        if hi - lo == 1 {
            let (l1, l2) = eig2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
            vals[hi] = l1;
            vals[lo] = l2;
            if lo == 0 {
                return Ok(vals);
            }
            h[(hi, hi - 1)] = Complex64::new(0.0, 0.0);
            hi = lo - 1;
            if hi == 0 {
                vals[0] = h[(0, 0)];
                return Ok(vals);
            }
            continue;
        }

        if total_iters >= cap {
            return Err(Error::Numeric(format!(
                "QR iteration did not converge within {cap} sweeps"
            )));
        }
        total_iters += 1;
        stagnation += 1;

        // Wilkinson shift from the trailing 2x2 of the active block, with an
        // exceptional shift every 12 stagnant sweeps to break cycles.
        let shift = if stagnation % 12 == 0 {
            h[(hi, hi)] + Complex64::new(
                1.5 * (h[(hi, hi - 1)].norm() + h[(hi - 1, hi - 2)].norm()),
                0.0,
            )
        } else {
            wilkinson_shift(h, hi)
        };

        qr_sweep(h, lo, hi, shift);
    }
}

fn subdiag_negligible(h: &CMatrix, i: usize, scale: f64) -> bool {
    let local = h[(i - 1, i - 1)].norm() + h[(i, i)].norm();
    let tol = f64::EPSILON * if local > 0.0 { local } else { scale };
    h[(i, i - 1)].norm() <= tol.max(1e-300)
}

fn wilkinson_shift(h: &CMatrix, hi: usize) -> Complex64 {
    let x = h[(hi - 1, hi - 1)];
    let y = h[(hi - 1, hi)];
    let z = h[(hi, hi - 1)];
    let w = h[(hi, hi)];
    let d = 0.5 * (x - w);
    let s = (d * d + y * z).sqrt();
    let denom = if (d + s).norm() >= (d - s).norm() { d + s } else { d - s };
    if denom.norm() == 0.0 {
        w
    } else {
        w - (y * z) / denom
    }
}

/// One explicit shifted QR step on the active Hessenberg block:
/// H - sI = QR (Givens), then H <- RQ + sI.
fn qr_sweep(h: &mut CMatrix, lo: usize, hi: usize, shift: Complex64) {
    let n = h.cols();
    for i in lo..=hi {
        h[(i, i)] -= shift;
    }
    // Left rotations annihilating the subdiagonal.
    let mut rots = Vec::with_capacity(hi - lo);
    for k in lo..hi {
        let a = h[(k, k)];
        let b = h[(k + 1, k)];
        let (c, s) = givens(a, b);
        // Apply G^H to rows k, k+1.
        for j in k..n {
            let t1 = h[(k, j)];
            let t2 = h[(k + 1, j)];
            h[(k, j)] = c * t1 + s.conj() * t2;
            h[(k + 1, j)] = -s * t1 + c * t2;
        }
        h[(k + 1, k)] = Complex64::new(0.0, 0.0);
        rots.push((c, s));
    }
    // Right-multiply by the accumulated rotations: H <- R Q.
    for (idx, (c, s)) in rots.iter().enumerate() {
        let k = lo + idx;
        let top = (k + 2).min(hi + 1);
        for i in 0..top {
            let t1 = h[(i, k)];
            let t2 = h[(i, k + 1)];
            h[(i, k)] = c * t1 + s * t2;
            h[(i, k + 1)] = -s.conj() * t1 + c * t2;
        }
    }
    for i in lo..=hi {
        h[(i, i)] += shift;
    }
}

/// Complex Givens pair (c real, s) for the row map
/// (row_k, row_{k+1}) -> (c row_k + conj(s) row_{k+1}, -s row_k + c row_{k+1}),
/// chosen so the second component of (a, b) is annihilated: s = c b / a.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    if b.norm() == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if a.norm() == 0.0 {
        return (0.0, b / b.norm());
    }
    let r = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let c = a.norm() / r;
    let s = (a.conj() / a.norm()) * b / r;
    (c, s)
}
