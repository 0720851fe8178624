//! Taylor coefficients of an entire function by the Cauchy integral on a
//! poly-circle, trapezoidal rule in each angle.

use std::f64::consts::PI;

use serde::Serialize;

use crate::special::hermite::MultiIndex;
use crate::C64;

/// Refinement stops once two successive results agree to this fraction of
/// the integrand scale.
pub const CAUCHY_TOLERANCE: f64 = 1e-9;
const MAX_DOUBLINGS: usize = 5;

#[derive(Clone, Debug, Serialize)]
pub struct CauchyCoefficient {
    pub alpha: MultiIndex,
    pub value: C64,
    pub points_per_circle: usize,
    pub converged: bool,
}

/// Radii `r_j = scale * sqrt(2 alpha_j + 1)`.
pub fn default_radii(alpha: &[usize], scale: f64) -> Vec<f64> {
    alpha.iter().map(|&a| scale * (2.0 * a as f64 + 1.0).sqrt()).collect()
}

fn trapezoid(f: &dyn Fn(&[C64]) -> C64, alpha: &[usize], radii: &[f64], m: usize) -> (C64, f64) {
    let n = alpha.len();
    let total = m.pow(n as u32);
    let mut idx = vec![0usize; n];
    let mut sum = C64::new(0.0, 0.0);
    let mut scale: f64 = 0.0;
    let mut z = vec![C64::new(0.0, 0.0); n];
    for _ in 0..total {
        let mut phase = 0.0;
        for j in 0..n {
            let th = 2.0 * PI * idx[j] as f64 / m as f64;
            z[j] = C64::from_polar(radii[j], th);
            phase -= alpha[j] as f64 * th;
        }
        let v = f(&z);
        scale = scale.max(v.norm());
        sum += v * C64::from_polar(1.0, phase);
        for j in (0..n).rev() {
            idx[j] += 1;
            if idx[j] < m {
                break;
            }
            idx[j] = 0;
        }
    }
    let rpow: f64 = alpha.iter().zip(radii).map(|(&a, &r)| r.powi(a as i32)).product();
    (sum / (total as f64 * rpow), scale / rpow)
}

/// `c_alpha = (2 pi)^{-n} oint F(r e^{i theta}) prod r_j^{-alpha_j} e^{-i alpha_j theta_j} dtheta`.
///
/// Starts from `4 (|alpha| + 8)` points per circle and doubles until two
/// successive values agree.
pub fn taylor_coeffs_cauchy(f: &dyn Fn(&[C64]) -> C64, alpha: &[usize], radii: &[f64]) -> CauchyCoefficient {
    let level: usize = alpha.iter().sum();
    let mut m = 4 * (level + 8);
    let (mut prev, _) = trapezoid(f, alpha, radii, m);
    for _ in 0..MAX_DOUBLINGS {
        m *= 2;
        let (cur, scale) = trapezoid(f, alpha, radii, m);
        if (cur - prev).norm() <= CAUCHY_TOLERANCE * scale.max(f64::MIN_POSITIVE) {
            return CauchyCoefficient { alpha: alpha.to_vec(), value: cur, points_per_circle: m, converged: true };
        }
        prev = cur;
    }
    CauchyCoefficient { alpha: alpha.to_vec(), value: prev, points_per_circle: m, converged: false }
}
