//! Bargmann transform
//! `Bg(z) = pi^{-n/2} e^{-z.z/4} int g(xi) e^{-|xi|^2/2} e^{z.xi} dxi`
//! and its Taylor coefficients `c_alpha = (g, Phi_alpha) / sqrt(2^|alpha| alpha! pi^{n/2})`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::numerics::function::SampledFunction;
use crate::special::coeffs::HermiteCoefficients;
use crate::special::hermite::LogScaled;
use crate::C64;

/// `ln sqrt(2^|alpha| alpha! pi^{n/2})`.
pub fn ln_link_factor(alpha: &[usize]) -> f64 {
    let n = alpha.len() as f64;
    let mut s = 0.25 * n * PI.ln();
    for &a in alpha {
        s += 0.5 * (a as f64) * 2f64.ln();
        s += 0.5 * (1..=a).map(|j| (j as f64).ln()).sum::<f64>();
    }
    s
}

/// Taylor coefficients of `Bg` from Hermite coefficients of `g`.
pub fn taylor_from_hermite(c: &HermiteCoefficients) -> HermiteCoefficients {
    let mut out = c.clone();
    for (v, a) in out.values.iter_mut().zip(&c.indices) {
        *v *= (-ln_link_factor(a)).exp();
    }
    out
}

/// Hermite coefficients from Taylor coefficients.
pub fn hermite_from_taylor(c: &HermiteCoefficients) -> HermiteCoefficients {
    let mut out = c.clone();
    for (v, a) in out.values.iter_mut().zip(&c.indices) {
        *v *= ln_link_factor(a).exp();
    }
    out
}

/// `Bg(z)` by quadrature on the grid of `g`, log-scaled so that large
/// `|Re z|` does not overflow.
pub fn bargmann_transform(g: &SampledFunction, z: &[C64]) -> Result<LogScaled> {
    let n = g.dim();
    if z.len() != n {
        return invalid(format!("point has {} coordinates, function has {n}", z.len()));
    }
    let w = g.grid.weight_tensor();
    let mut exps = Vec::with_capacity(g.values.len());
    let mut shift = f64::NEG_INFINITY;
    for (idx, v) in g.values.indexed_iter() {
        if v.norm() == 0.0 {
            continue;
        }
        let x = g.grid.point(&idx);
        let e: C64 = x.iter().zip(z).map(|(&xi, &zi)| zi * xi - 0.5 * xi * xi).sum();
        shift = shift.max(e.re);
        exps.push((e, *v * w[&idx]));
    }
    if exps.is_empty() {
        return Ok(LogScaled { mantissa: C64::new(0.0, 0.0), log_scale: 0.0 });
    }
    let sum: C64 = exps.iter().map(|(e, v)| v * (e - shift).exp()).sum();
    let zz: C64 = z.iter().map(|v| v * v).sum();
    let outer = -0.25 * zz;
    let ln_norm = -0.5 * n as f64 * PI.ln();
    Ok(LogScaled { mantissa: sum * C64::from_polar(1.0, outer.im), log_scale: shift + outer.re + ln_norm })
}

/// `Bg(z) = sum_alpha c_alpha z^alpha` from a Taylor table.
pub fn bargmann_series(taylor: &HermiteCoefficients, z: &[C64]) -> C64 {
    taylor
        .indices
        .iter()
        .zip(&taylor.values)
        .map(|(a, v)| *v * a.iter().zip(z).map(|(&k, &zj)| zj.powu(k as u32)).product::<C64>())
        .sum()
}
