//! Mehler kernel of the Hermite semigroup `e^{-tH}`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::special::hermite::hermite_row;

/// `K_t(x, y) = (2 pi sinh 2t)^{-n/2}
///   exp(-(1+r^2)/(2(1-r^2)) (|x|^2+|y|^2) + 2r/(1-r^2) x.y)`, `r = e^{-2t}`.
pub fn mehler_kernel(t: f64, x: &[f64], y: &[f64]) -> Result<f64> {
    if !(t > 0.0) {
        return invalid(format!("Mehler kernel needs t > 0, got {t}"));
    }
    let n = x.len() as f64;
    let r = (-2.0 * t).exp();
    let one_m = -(-4.0 * t).exp_m1();
    let xx: f64 = x.iter().map(|v| v * v).sum();
    let yy: f64 = y.iter().map(|v| v * v).sum();
    let xy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let expo = -0.5 * (1.0 + r * r) / one_m * (xx + yy) + 2.0 * r / one_m * xy;
    Ok((2.0 * PI * (2.0 * t).sinh()).powf(-0.5 * n) * expo.exp())
}

/// Truncated spectral sum `sum_{|alpha|<=trunc} e^{-(2|alpha|+n)t} Phi_alpha(x) Phi_alpha(y)`.
pub fn mehler_spectral(t: f64, x: &[f64], y: &[f64], trunc: usize) -> f64 {
    let n = x.len();
    let rows: Vec<(Vec<f64>, Vec<f64>)> = x.iter().zip(y).map(|(&a, &b)| (hermite_row(trunc, a), hermite_row(trunc, b))).collect();
    crate::special::hermite::multi_indices(n, trunc)
        .iter()
        .map(|alpha| {
            let level: usize = alpha.iter().sum();
            let prod: f64 = alpha.iter().enumerate().map(|(j, &k)| rows[j].0[k] * rows[j].1[k]).product();
            (-((2 * level + n) as f64) * t).exp() * prod
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hermite::hermite_fn;

    #[test]
    fn acts_on_ground_state() {
        let t = 0.5;
        let (ys, ws) = crate::numerics::grid::gauss_hermite_nodes(64).unwrap();
        for &x in &[-1.5, 0.0, 0.8, 2.4] {
            let s: f64 = ys.iter().zip(&ws).map(|(&y, &w)| w * mehler_kernel(t, &[x], &[y]).unwrap() * hermite_fn(0, y)).sum();
            assert!((s - (-t).exp() * hermite_fn(0, x)).abs() < 1e-8);
        }
    }

    #[test]
    fn matches_spectral_sum_and_is_symmetric() {
        for &t in &[0.25, 0.6, 1.0] {
            for &(x, y) in &[(0.3, -0.7), (1.9, 1.1), (-2.5, 0.0)] {
                let k = mehler_kernel(t, &[x], &[y]).unwrap();
                let s = mehler_spectral(t, &[x], &[y], 40);
                assert!((k - s).abs() < 10.0 * (-(81.0) * t).exp() + 1e-13, "t={t}");
                assert_eq!(k, mehler_kernel(t, &[y], &[x]).unwrap());
            }
        }
        let k2 = mehler_kernel(0.4, &[0.3, -0.2], &[0.1, 0.5]).unwrap();
        let s2 = mehler_spectral(0.4, &[0.3, -0.2], &[0.1, 0.5], 30);
        assert!((k2 - s2).abs() < 1e-10);
    }

    #[test]
    fn long_time_limit_is_ground_state_projection() {
        let t = 12.0;
        let (x, y) = (0.4, -1.1);
        let k = mehler_kernel(t, &[x], &[y]).unwrap() * t.exp();
        let limit = PI.powf(-0.5) * (-(x * x + y * y) / 2.0).exp();
        assert!((k - limit).abs() < 1e-9);
    }

    #[test]
    fn rejects_nonpositive_time() {
        assert!(mehler_kernel(0.0, &[0.0], &[0.0]).is_err());
    }
}
