//! Closed-form solution of real cubic (and degraded quadratic/linear)
//! polynomials, with one Newton polish per root.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Roots of c3 x^3 + c2 x^2 + c1 x + c0, with multiplicity.
#[derive(Debug, Clone)]
pub struct CubicRoots {
    pub roots: Vec<Complex64>,
    /// Effective polynomial degree after dropping leading zeros.
    pub degree: usize,
}

/// Solve a real-coefficient polynomial of degree <= 3.
///
/// Closed form (trigonometric for three real roots, Cardano otherwise)
/// followed by one Newton step per root on the original polynomial. The
/// all-zero polynomial is rejected.
pub fn solve_cubic_real(c3: f64, c2: f64, c1: f64, c0: f64) -> Result<CubicRoots> {
    for (name, c) in [("c3", c3), ("c2", c2), ("c1", c1), ("c0", c0)] {
        if !c.is_finite() {
            return Err(Error::InvalidArgument(format!("coefficient {name} is not finite")));
        }
    }
    if c3 == 0.0 {
        if c2 == 0.0 {
            if c1 == 0.0 {
                if c0 == 0.0 {
                    return Err(Error::InvalidArgument(
                        "all-zero polynomial has no defined roots".into(),
                    ));
                }
                return Ok(CubicRoots { roots: Vec::new(), degree: 0 });
            }
            return Ok(CubicRoots {
                roots: vec![Complex64::new(-c0 / c1, 0.0)],
                degree: 1,
            });
        }
        return Ok(CubicRoots { roots: solve_quadratic(c2, c1, c0), degree: 2 });
    }

    // Monic form x^3 + a x^2 + b x + c, then depressed t^3 + p t + q with
    // x = t - a/3.
    let a = c2 / c3;
    let b = c1 / c3;
    let c = c0 / c3;
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;

    let mut roots: Vec<Complex64> = Vec::with_capacity(3);
    let disc = (q / 2.0) * (q / 2.0) + (p / 3.0) * (p / 3.0) * (p / 3.0);
    if disc <= 0.0 && p < 0.0 {
        // Three real roots: trigonometric form.
        let m = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
        let theta = arg.acos() / 3.0;
        for k in 0..3 {
            let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
            roots.push(Complex64::new(t + shift, 0.0));
        }
    } else {
        // One real root via Cardano (cancellation-safe pairing), plus the
        // remaining quadratic factor.
        let sq = disc.max(0.0).sqrt();
        let u = if q >= 0.0 { -q / 2.0 - sq } else { -q / 2.0 + sq };
        let u = u.cbrt();
        let v = if u != 0.0 { -p / (3.0 * u) } else { 0.0 };
        let t0 = u + v;
        let x0 = t0 + shift;
        roots.push(Complex64::new(x0, 0.0));
        // Deflate: x^3 + a x^2 + b x + c = (x - x0)(x^2 + e x + f).
        let e = a + x0;
        let f = b + x0 * e;
        roots.extend(solve_quadratic(1.0, e, f));
    }

    let scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    for r in roots.iter_mut() {
        *r = newton_polish(*r, c3, c2, c1, c0, scale);
    }
    Ok(CubicRoots { roots, degree: 3 })
}

fn solve_quadratic(a: f64, b: f64, c: f64) -> Vec<Complex64> {
    let disc = b * b - 4.0 * a * c;
    if disc >= 0.0 {
        let sq = disc.sqrt();
        // q-trick avoids cancellation between -b and the square root.
        let q = -0.5 * (b + b.signum() * sq);
        if q == 0.0 {
            return vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        }
        vec![Complex64::new(q / a, 0.0), Complex64::new(c / q, 0.0)]
    } else {
        let re = -b / (2.0 * a);
        let im = (-disc).sqrt() / (2.0 * a);
        vec![Complex64::new(re, im), Complex64::new(re, -im)]
    }
}

fn newton_polish(r: Complex64, c3: f64, c2: f64, c1: f64, c0: f64, scale: f64) -> Complex64 {
    let p = ((Complex64::new(c3, 0.0) * r + c2) * r + c1) * r + c0;
    let dp = (Complex64::new(3.0 * c3, 0.0) * r + 2.0 * c2) * r + c1;
    if dp.norm() <= f64::EPSILON * scale {
        return r;
    }
    let next = r - p / dp;
    // Reject a polish step that moved the value away from zero.
    let pn = ((Complex64::new(c3, 0.0) * next + c2) * next + c1) * next + c0;
    if pn.norm() < p.norm() {
        next
    } else {
        r
    }
}

/// |c3 r^3 + c2 r^2 + c1 r + c0| normalized by the documented scale.
pub fn cubic_residual(r: Complex64, c3: f64, c2: f64, c1: f64, c0: f64) -> f64 {
    let p = ((Complex64::new(c3, 0.0) * r + c2) * r + c1) * r + c0;
    let coeff_scale = c3.abs().max(c2.abs()).max(c1.abs()).max(c0.abs());
    let r3 = r.norm().powi(3).max(1.0);
    p.norm() / (coeff_scale * r3).max(f64::MIN_POSITIVE)
}
