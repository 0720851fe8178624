//! Weighted `L^2` norms of holomorphic extensions: the heat-image isometry
//! with weight `U_t`, the exponential-type norm identity on the strip
//! `|y| < t` (one dimension), and pointwise bounds on the strip.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::numerics::envelope::{envelope_plateau, EnvelopeSample, Plateau};
use crate::numerics::grid::Axis;
use crate::semigroups::multipliers::hermite_semigroup;
use crate::special::coeffs::{synthesize_on_axes, HermiteCoefficients};
use crate::special::hermite::hermite_row_complex;
use crate::special::laguerre::laguerre_function_imaginary;
use crate::C64;

#[derive(Clone, Debug, Serialize)]
pub struct IsometryReport {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
    /// Set when refining the quadrature moves the result by more than the
    /// tolerance.
    pub inconclusive: bool,
}

/// Normalization of `U_t(x, y) = (2 / (pi sinh 4t))^{n/2} e^{tanh(2t)|x|^2 - coth(2t)|y|^2}`.
pub fn bergman_weight_constant(n: usize, t: f64) -> f64 {
    (2.0 / (PI * (4.0 * t).sinh())).powf(n as f64 / 2.0)
}

fn isometry_lhs(c: &HermiteCoefficients, t: f64, m: usize) -> Result<f64> {
    let n = c.n;
    let heat = hermite_semigroup(c, t)?;
    let ta = (2.0 * t).tanh();
    let co = 1.0 / (2.0 * t).tanh();
    let xs = Axis::gauss_hermite(m, 1.0 / (1.0 - ta).sqrt())?;
    let ys = Axis::gauss_hermite(m, 1.0 / (co - 1.0).sqrt())?;
    let mut pts = Vec::with_capacity(m * m);
    let mut wts = Vec::with_capacity(m * m);
    for (x, wx) in xs.nodes.iter().zip(&xs.weights) {
        for (y, wy) in ys.nodes.iter().zip(&ys.weights) {
            pts.push(C64::new(*x, *y));
            wts.push(wx * wy * (ta * x * x - co * y * y).exp());
        }
    }
    let vals = synthesize_on_axes(&heat, &vec![pts; n]);
    let mut total = 0.0;
    for (idx, v) in vals.indexed_iter() {
        let w: f64 = (0..n).map(|j| wts[idx[j]]).product();
        total += w * v.norm_sqr();
    }
    Ok(total * bergman_weight_constant(n, t))
}

/// `int |e^{-tH} phi(x+iy)|^2 U_t dx dy` against `||phi||^2`.
pub fn hermite_bergman_isometry_check(c: &HermiteCoefficients, t: f64, tol: f64) -> Result<IsometryReport> {
    if !(t > 0.0) {
        return invalid(format!("isometry check needs t > 0 (t = {t})"));
    }
    let m = (c.trunc + 24).max(32);
    let lhs = isometry_lhs(c, t, m)?;
    let refined = isometry_lhs(c, t, m + m / 2)?;
    let rhs = c.norm_sq();
    let rel_error = if rhs > 0.0 { (lhs - rhs).abs() / rhs } else { lhs.abs() };
    let inconclusive = (lhs - refined).abs() > tol * rhs.max(f64::MIN_POSITIVE);
    Ok(IsometryReport { lhs, rhs, rel_error, inconclusive })
}

/// Gauss-Chebyshev rule of the second kind on `[-1, 1]` with weight `sqrt(1-s^2)`.
fn chebyshev_second_kind(m: usize) -> (Vec<f64>, Vec<f64>) {
    (1..=m)
        .map(|k| {
            let th = k as f64 * PI / (m + 1) as f64;
            (th.cos(), PI / (m + 1) as f64 * th.sin().powi(2))
        })
        .unzip()
}

/// Quadrature for the strip `|y| < t`: points `x + iy` and weights that
/// include `w_t = sqrt(2/pi) rho cosh(2 x rho)`, `rho = sqrt(t^2 - y^2)`.
fn strip_rule(t: f64) -> Result<(Vec<C64>, Vec<f64>)> {
    let (s_nodes, s_weights) = chebyshev_second_kind(48);
    let xs = Axis::gauss_hermite(96, 1.0)?;
    let mut pts = Vec::with_capacity(s_nodes.len() * xs.len());
    let mut wts = Vec::with_capacity(pts.capacity());
    for (&s, &ws) in s_nodes.iter().zip(&s_weights) {
        let rho = t * (1.0 - s * s).sqrt();
        for (&x, &wx) in xs.nodes.iter().zip(&xs.weights) {
            pts.push(C64::new(x, t * s));
            // rho dy = t^2 sqrt(1-s^2) ds, and sqrt(1-s^2) sits in the Chebyshev weight
            wts.push((2.0 / PI).sqrt() * t * t * ws * wx * (2.0 * x * rho).cosh());
        }
    }
    Ok((pts, wts))
}

fn check_strip(c: &HermiteCoefficients, t: f64) -> Result<()> {
    if c.n != 1 {
        return invalid("the strip norm is implemented for n = 1");
    }
    if !(t > 0.0) {
        return invalid(format!("strip norm needs t > 0 (t = {t})"));
    }
    Ok(())
}

/// Strip norm `int_{|y|<t} int |phi(x+iy)|^2 w_t(x, y) dx dy` (one dimension).
pub fn strip_norm(c: &HermiteCoefficients, t: f64) -> Result<f64> {
    check_strip(c, t)?;
    let (pts, wts) = strip_rule(t)?;
    let vals = synthesize_on_axes(c, &[pts]);
    Ok(vals.iter().zip(&wts).map(|(v, w)| w * v.norm_sqr()).sum())
}

/// Strip norms of the Hermite components, `sum_k int |P_k phi|^2 w_t`.
///
/// Components of different levels are not orthogonal for `w_t`, so this
/// differs from [`strip_norm`] unless the cross terms cancel.
pub fn strip_norm_levels(c: &HermiteCoefficients, t: f64) -> Result<f64> {
    check_strip(c, t)?;
    let (pts, wts) = strip_rule(t)?;
    let mut per_level = vec![0.0; c.trunc + 1];
    for (z, w) in pts.iter().zip(&wts) {
        for (k, h) in hermite_row_complex(c.trunc, *z).into_iter().enumerate() {
            per_level[k] += w * h.norm_sqr();
        }
    }
    Ok(c.level_norms_sq().iter().zip(&per_level).map(|(a, b)| a * b).sum())
}

/// Series side `sum_k ||P_k phi||^2 L_k(-2t^2) e^{t^2}` (one dimension).
pub fn strip_series(c: &HermiteCoefficients, t: f64) -> f64 {
    c.level_norms_sq().iter().enumerate().map(|(k, v)| v * laguerre_function_imaginary(k, 0, t * t)).sum()
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioReport {
    /// Level-wise strip norm over series, per function.
    pub ratios: Vec<f64>,
    pub mean: f64,
    /// Standard deviation over mean of `ratios`.
    pub spread: f64,
    /// Full strip norm over series, per function.
    pub full_ratios: Vec<f64>,
    pub full_spread: f64,
}

fn mean_spread(v: &[f64]) -> (f64, f64) {
    let m = v.len() as f64;
    let mean = v.iter().sum::<f64>() / m;
    let var = v.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / m;
    (mean, var.sqrt() / mean.abs())
}

/// Ratio of strip norm to series for each function. The series only sees
/// `||P_k phi||`, so the identity is tested level by level; the ratio of the
/// full norm is reported alongside.
pub fn bergman_norm_ratio_check(list: &[HermiteCoefficients], t: f64) -> Result<RatioReport> {
    if list.is_empty() {
        return invalid("empty function list");
    }
    let mut ratios = Vec::with_capacity(list.len());
    let mut full_ratios = Vec::with_capacity(list.len());
    for c in list {
        let rhs = strip_series(c, t);
        if !(rhs > 0.0) {
            return invalid("zero function in the ratio list");
        }
        ratios.push(strip_norm_levels(c, t)? / rhs);
        full_ratios.push(strip_norm(c, t)? / rhs);
    }
    let (mean, spread) = mean_spread(&ratios);
    let (_, full_spread) = mean_spread(&full_ratios);
    Ok(RatioReport { ratios, mean, spread, full_ratios, full_spread })
}

#[derive(Clone, Debug, Serialize)]
pub struct PointwiseReport {
    pub s: f64,
    pub extent: f64,
    pub inner_sup: f64,
    pub outer_sup: f64,
    pub plateau: bool,
}

/// Samples `|phi(x+iy)| e^{|x| sqrt(s^2 - y^2)}` over `|x| <= extent`,
/// `|y| < s` and asks whether it levels off.
pub fn pointwise_analytic_bound_check(c: &HermiteCoefficients, s: f64, extent: f64) -> Result<PointwiseReport> {
    if c.n != 1 {
        return invalid("the strip bound is sampled for n = 1");
    }
    if !(s > 0.0 && extent > 0.0) {
        return invalid("strip half-width and extent must be positive");
    }
    let nx = 401;
    let ny = 9;
    let mut pts = Vec::with_capacity(nx * ny);
    for i in 0..nx {
        let x = -extent + 2.0 * extent * i as f64 / (nx - 1) as f64;
        for j in 0..ny {
            let y = s * (-1.0 + 2.0 * (j as f64 + 0.5) / ny as f64);
            pts.push(C64::new(x, y));
        }
    }
    let vals = synthesize_on_axes(c, &[pts.clone()]);
    let samples: Vec<EnvelopeSample> = pts
        .iter()
        .zip(vals.iter())
        .map(|(z, v)| EnvelopeSample { radius: z.re.abs(), exponent: z.re.abs() * (s * s - z.im * z.im).sqrt(), magnitude: v.norm() })
        .collect();
    let Plateau { inner_sup, outer_sup, plateau } = envelope_plateau(&samples, 0.05);
    Ok(PointwiseReport { s, extent, inner_sup, outer_sup, plateau })
}
