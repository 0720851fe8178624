//! Gutzmer-type identity in one dimension: the average over rotations of
//! `|| pi(i(y, v)) phi ||^2` equals `sum_k ||P_k phi||^2 L_k(-2(y^2+v^2)) e^{y^2+v^2}`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::numerics::grid::Axis;
use crate::special::coeffs::{synthesize_on_axes, HermiteCoefficients};
use crate::special::laguerre::laguerre_function_imaginary;
use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct GutzmerReport {
    pub y: f64,
    pub v: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
}

/// `(1/2pi) int dtheta int e^{-2 a xi} |phi(xi + i b)|^2 dxi` with
/// `(a, b)` the rotation of `(y, v)` by `theta`.
fn rotation_average(c: &HermiteCoefficients, y: f64, v: f64, angles: usize, nodes: usize) -> Result<f64> {
    let xs = Axis::gauss_hermite(nodes, 1.0)?;
    let mut total = 0.0;
    for k in 0..angles {
        let th = 2.0 * PI * k as f64 / angles as f64;
        let (a, b) = (th.cos() * y - th.sin() * v, th.sin() * y + th.cos() * v);
        // the factor e^{-2 a xi} shifts the bulk of the integrand to xi = -a
        let pts: Vec<C64> = xs.nodes.iter().map(|&x| C64::new(x - a, b)).collect();
        let vals = synthesize_on_axes(c, &[pts]);
        let inner: f64 = xs
            .nodes
            .iter()
            .zip(&xs.weights)
            .zip(vals.iter())
            .map(|((&x, &w), f)| w * (-2.0 * a * (x - a)).exp() * f.norm_sqr())
            .sum();
        total += inner;
    }
    Ok(total / angles as f64)
}

pub fn gutzmer_check_1d(c: &HermiteCoefficients, y: f64, v: f64) -> Result<GutzmerReport> {
    if c.n != 1 {
        return invalid("the rotation average is implemented for n = 1");
    }
    let r2 = y * y + v * v;
    let rhs: f64 = c.level_norms_sq().iter().enumerate().map(|(k, p)| p * laguerre_function_imaginary(k, 0, r2)).sum();
    let nodes = (c.trunc + 48).max(64);
    let lhs = rotation_average(c, y, v, 64, nodes)?;
    if !(lhs.is_finite() && rhs.is_finite()) {
        return Err(Error::Overflow(format!("Gutzmer sums overflow at (y, v) = ({y}, {v})")));
    }
    let rel_error = if rhs > 0.0 { (lhs - rhs).abs() / rhs } else { lhs.abs() };
    Ok(GutzmerReport { y, v, lhs, rhs, rel_error })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state() {
        let c = HermiteCoefficients::unit(1, 2, &[0]);
        let r = gutzmer_check_1d(&c, 0.3, 0.0).unwrap();
        assert!(r.rel_error < 1e-4, "{r:?}");
        assert!((r.rhs - 0.09f64.exp()).abs() < 1e-12);
        let real = gutzmer_check_1d(&c, 0.0, 0.0).unwrap();
        assert!((real.lhs - 1.0).abs() < 1e-12 && (real.rhs - 1.0).abs() < 1e-12);
    }

    #[test]
    fn low_hermite_functions_in_the_disc() {
        for k in 0..3 {
            let c = HermiteCoefficients::unit(1, 3, &[k]);
            for (y, v) in [(0.2, 0.2), (0.5, 0.0), (0.0, 0.5), (-0.3, 0.35)] {
                let r = gutzmer_check_1d(&c, y, v).unwrap();
                assert!(r.rel_error < 1e-4, "k={k} {r:?}");
            }
        }
    }

    #[test]
    fn mixed_function_at_larger_radius() {
        let mut c = HermiteCoefficients::zeros(1, 5);
        c.values[1] = C64::new(0.5, -0.2);
        c.values[4] = C64::new(0.0, 0.8);
        let r = gutzmer_check_1d(&c, 0.7, -0.4).unwrap();
        assert!(r.rel_error < 1e-8, "{r:?}");
    }
}
