//! Normalized Hermite functions `h_k(x) = H_k(x) e^{-x^2/2} / sqrt(2^k k! sqrt(pi))`.
//!
//! All evaluation goes through the three-term recurrence
//! `h_{k+1} = x sqrt(2/(k+1)) h_k - sqrt(k/(k+1)) h_{k-1}`, which keeps the
//! functions bounded and avoids the factorials.

use crate::C64;

pub(crate) const PI_M14: f64 = 0.751_125_544_464_942_5;

/// `[h_0(x), ..., h_kmax(x)]` for real `x`.
pub fn hermite_row(kmax: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let h0 = PI_M14 * (-0.5 * x * x).exp();
    out.push(h0);
    if kmax == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * x * h0);
    for k in 1..kmax {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// Single real evaluation `h_k(x)`.
pub fn hermite_fn(k: usize, x: f64) -> f64 {
    hermite_row(k, x)[k]
}

/// `[h_0(z), ..., h_kmax(z)]` for complex `z` (the entire extension).
///
/// Overflows once `|Im z|` is large; see [`hermite_row_log`].
pub fn hermite_row_complex(kmax: usize, z: C64) -> Vec<C64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let h0 = (-0.5 * z * z).exp() * PI_M14;
    out.push(h0);
    if kmax == 0 {
        return out;
    }
    out.push(z * h0 * std::f64::consts::SQRT_2);
    for k in 1..kmax {
        let kf = k as f64;
        let next = z * out[k] * (2.0 / (kf + 1.0)).sqrt() - out[k - 1] * (kf / (kf + 1.0)).sqrt();
        out.push(next);
    }
    out
}

/// A complex number stored as `mantissa * exp(log_scale)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogScaled {
    pub mantissa: C64,
    pub log_scale: f64,
}

impl LogScaled {
    pub fn value(&self) -> C64 {
        self.mantissa * self.log_scale.exp()
    }

    /// `ln |value|`, finite even when the value itself is not representable.
    pub fn ln_abs(&self) -> f64 {
        self.mantissa.norm().ln() + self.log_scale
    }
}

/// Overflow-safe version of [`hermite_row_complex`].
///
/// The Gaussian factor `e^{-z^2/2}` is carried in the log scale and the
/// polynomial part is renormalized whenever it grows past `1e100`.
pub fn hermite_row_log(kmax: usize, z: C64) -> Vec<LogScaled> {
    let g = -0.5 * z * z;
    let mut scale = g.re;
    let phase = C64::from_polar(1.0, g.im);
    let mut prev = C64::new(0.0, 0.0);
    let mut cur = phase * PI_M14;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(LogScaled { mantissa: cur, log_scale: scale });
    for k in 0..kmax {
        let kf = k as f64;
        let next = z * cur * (2.0 / (kf + 1.0)).sqrt() - prev * (kf / (kf + 1.0)).sqrt();
        prev = cur;
        cur = next;
        let mag = cur.norm().max(prev.norm());
        if mag > 1e100 {
            prev /= mag;
            cur /= mag;
            scale += mag.ln();
        }
        out.push(LogScaled { mantissa: cur, log_scale: scale });
    }
    out
}

/// Multi-index `alpha` in `N^n`.
pub type MultiIndex = Vec<usize>;

/// All multi-indices with `|alpha| <= trunc`, graded by `|alpha|`, then
/// lexicographically descending within a level.
pub fn multi_indices(n: usize, trunc: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for level in 0..=trunc {
        level_indices(n, level, &mut Vec::new(), &mut out);
    }
    out
}

/// Multi-indices with `|alpha| = level`.
pub fn indices_at_level(n: usize, level: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    level_indices(n, level, &mut Vec::new(), &mut out);
    out
}

fn level_indices(n: usize, remaining: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
    if prefix.len() + 1 == n {
        prefix.push(remaining);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if n == 0 {
        return;
    }
    for first in (0..=remaining).rev() {
        prefix.push(first);
        level_indices(n, remaining - first, prefix, out);
        prefix.pop();
    }
}

/// `Phi_alpha(x) = prod_j h_{alpha_j}(x_j)` at real points.
pub fn hermite_eval(alpha: &[usize], x: &[f64]) -> f64 {
    alpha.iter().zip(x).map(|(&a, &xj)| hermite_fn(a, xj)).product()
}

/// `Phi_alpha(z)` at complex points.
pub fn hermite_eval_complex(alpha: &[usize], z: &[C64]) -> C64 {
    alpha
        .iter()
        .zip(z)
        .map(|(&a, &zj)| hermite_row_complex(a, zj)[a])
        .product()
}

/// Log-scaled `Phi_alpha(z)`, safe for large imaginary parts.
pub fn hermite_eval_log(alpha: &[usize], z: &[C64]) -> LogScaled {
    let mut acc = LogScaled { mantissa: C64::new(1.0, 0.0), log_scale: 0.0 };
    for (&a, &zj) in alpha.iter().zip(z) {
        let h = hermite_row_log(a, zj)[a];
        acc.mantissa *= h.mantissa;
        acc.log_scale += h.log_scale;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_state_at_origin() {
        assert!((hermite_fn(0, 0.0) - 0.751_125_5).abs() < 1e-7);
    }

    #[test]
    fn first_excited_closed_form() {
        let expect = 2f64.sqrt() * PI_M14 * (-0.5f64).exp();
        assert!((hermite_fn(1, 1.0) - expect).abs() < 1e-14);
        assert!((hermite_fn(1, 1.0) - 0.644_288).abs() < 1e-6);
    }

    #[test]
    fn eigenvalue_by_finite_differences() {
        // -h'' + x^2 h = 7 h for k = 3
        let d = 1e-3;
        for &x in &[-1.3, 0.2, 0.9, 2.1] {
            let h = |y: f64| hermite_fn(3, y);
            let lap = (h(x + d) - 2.0 * h(x) + h(x - d)) / (d * d);
            let applied = -lap + x * x * h(x);
            assert!((applied / h(x) - 7.0).abs() < 1e-4, "x = {x}");
        }
    }

    #[test]
    fn bounded_up_to_degree_200() {
        let mut x = -40.0;
        while x <= 40.0 {
            for v in hermite_row(200, x) {
                assert!(v.abs() <= 1.1);
            }
            x += 0.037;
        }
    }

    #[test]
    fn complex_matches_real_on_axis() {
        let r = hermite_row(30, 1.7);
        let c = hermite_row_complex(30, C64::new(1.7, 0.0));
        for (a, b) in r.iter().zip(&c) {
            assert!((a - b.re).abs() < 1e-14 && b.im.abs() < 1e-14);
        }
    }

    #[test]
    fn log_scaled_agrees_and_survives_large_imaginary_part() {
        let z = C64::new(0.4, 2.5);
        let plain = hermite_row_complex(40, z);
        let logged = hermite_row_log(40, z);
        for (a, b) in plain.iter().zip(&logged) {
            assert!((a - b.value()).norm() <= 1e-12 * a.norm().max(1.0));
        }
        let far = hermite_row_log(60, C64::new(0.0, 60.0));
        assert!(far[60].ln_abs().is_finite());
        // h_0(iy) = pi^{-1/4} e^{y^2/2}
        assert!((far[0].ln_abs() - (PI_M14.ln() + 1800.0)).abs() < 1e-9);
    }

    #[test]
    fn multi_index_counts() {
        assert_eq!(multi_indices(1, 5).len(), 6);
        assert_eq!(multi_indices(2, 4).len(), 15);
        assert_eq!(indices_at_level(2, 3), vec![vec![3, 0], vec![2, 1], vec![1, 2], vec![0, 3]]);
        assert_eq!(multi_indices(3, 2).len(), 10);
    }
}
