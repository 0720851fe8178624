//! Fitted decay envelopes `|f(x)| <~ C e^{-t|x|}`, `C e^{-a|x|^2/2}` or
//! `C |x|^d e^{-a|x|^2/2}`, and certificates that a given rate holds on the
//! sampled range.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::numerics::envelope::{envelope_plateau, EnvelopeSample, Plateau, NOISE_FLOOR};
use crate::numerics::function::SampledFunction;

/// Inner and outer fitted rates must agree to this ratio for an exponential
/// envelope to count as stable.
pub const RATE_STABILITY: f64 = 0.8;
/// Slack for the plateau test.
pub const PLATEAU_SLACK: f64 = 0.05;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DecayKind {
    Exponential,
    Gaussian,
    GaussianPolynomial,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Function,
    Fourier,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayHypothesis {
    pub kind: DecayKind,
    pub side: Side,
    /// `t` of `e^{-t|x|}`, or `a` of `e^{-a|x|^2/2}`.
    pub rate: f64,
    pub constant: f64,
    /// Largest residual of the log fit.
    pub fit_quality: f64,
    /// Power `d` of the polynomial factor (polynomial-times-Gaussian fits only).
    pub degree: f64,
    /// Inner-half rate over outer-half rate is within [`RATE_STABILITY`].
    pub stable: bool,
}

/// `(|x|, |f(x)|)` for samples above the noise floor.
fn radial_samples(f: &SampledFunction) -> Vec<(f64, f64)> {
    let peak = f.max_abs();
    f.values
        .indexed_iter()
        .filter(|(_, v)| v.norm() > NOISE_FLOOR * peak)
        .map(|(idx, v)| {
            let x = f.grid.point(&idx);
            (x.iter().map(|c| c * c).sum::<f64>().sqrt(), v.norm())
        })
        .collect()
}

/// Least squares `ln|f| ~ sum_j coef_j basis_j(r)`; returns coefficients and
/// the largest residual.
fn log_fit(pts: &[(f64, f64)], basis: &[&dyn Fn(f64) -> f64]) -> Option<(Vec<f64>, f64)> {
    if pts.len() < basis.len() + 1 {
        return None;
    }
    let a = DMatrix::from_fn(pts.len(), basis.len(), |i, j| basis[j](pts[i].0));
    let b = DVector::from_iterator(pts.len(), pts.iter().map(|p| p.1.ln()));
    let sol = a.clone().svd(true, true).solve(&b, 1e-14).ok()?;
    let res = (&a * &sol - &b).amax();
    Some((sol.iter().copied().collect(), res))
}

fn in_range(pts: &[(f64, f64)], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    pts.iter().copied().filter(|p| p.0 >= lo && p.0 <= hi).collect()
}

/// Radius of the outermost local maximum of `|f|` along `r`.
fn outermost_peak(pts: &[(f64, f64)]) -> f64 {
    let mut sorted = pts.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut best = sorted.first().copied().unwrap_or((0.0, 0.0));
    for p in sorted.iter().skip(1) {
        if p.1 >= best.1 {
            best = *p;
        } else if p.1 < 0.999 * best.1 {
            break;
        }
    }
    best.0
}

fn one(_: f64) -> f64 {
    1.0
}
fn lin(r: f64) -> f64 {
    r
}
fn sq(r: f64) -> f64 {
    r * r
}
fn lnr(r: f64) -> f64 {
    r.ln()
}
fn inv_sq(r: f64) -> f64 {
    1.0 / (r * r)
}

fn rate_from(kind: DecayKind, coef: &[f64]) -> f64 {
    match kind {
        DecayKind::Exponential => -coef[1],
        DecayKind::Gaussian | DecayKind::GaussianPolynomial => -2.0 * coef[1],
    }
}

pub fn fit_decay_hypothesis(f: &SampledFunction, kind: DecayKind, side: Side) -> Result<DecayHypothesis> {
    let pts = radial_samples(f);
    if pts.is_empty() || f.max_abs() == 0.0 {
        return invalid("all samples are below the noise floor");
    }
    let r_max = pts.iter().map(|p| p.0).fold(0.0, f64::max);
    let fail = || invalid::<DecayHypothesis>("not enough samples for a decay fit");
    let (rate, fit_quality, degree, stable) = match kind {
        DecayKind::Exponential | DecayKind::Gaussian => {
            let basis: [&dyn Fn(f64) -> f64; 2] = if kind == DecayKind::Exponential { [&one, &lin] } else { [&one, &sq] };
            let Some((outer, res)) = log_fit(&in_range(&pts, 0.5 * r_max, r_max), &basis) else { return fail() };
            let inner = log_fit(&in_range(&pts, 0.25 * r_max, 0.5 * r_max), &basis);
            let rate = rate_from(kind, &outer);
            let stable = match inner {
                Some((c, _)) => {
                    let ri = rate_from(kind, &c);
                    ri > 0.0 && rate > 0.0 && rate / ri >= RATE_STABILITY
                }
                None => false,
            };
            (rate, res, 0.0, stable)
        }
        DecayKind::GaussianPolynomial => {
            let x0 = outermost_peak(&pts).max(0.5);
            let basis: [&dyn Fn(f64) -> f64; 4] = [&one, &sq, &lnr, &inv_sq];
            let Some((c, res)) = log_fit(&in_range(&pts, x0, r_max), &basis) else { return fail() };
            (-2.0 * c[1], res, c[2], true)
        }
    };
    if !(rate > 0.0) {
        return invalid(format!("fitted rate {rate} is not positive"));
    }
    let constant = pts
        .iter()
        .map(|&(r, v)| match kind {
            DecayKind::Exponential => v * (rate * r).exp(),
            DecayKind::Gaussian => v * (0.5 * rate * r * r).exp(),
            DecayKind::GaussianPolynomial => v * (0.5 * rate * r * r).exp() / r.max(1.0).powf(degree),
        })
        .fold(0.0, f64::max);
    Ok(DecayHypothesis { kind, side, rate, constant, fit_quality, degree, stable })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecayCertificate {
    pub kind: DecayKind,
    pub rate: f64,
    pub inner_sup: f64,
    pub outer_sup: f64,
    pub stable: bool,
    pub certified: bool,
}

/// Does `|f| e^{rate |x|}` (exponential) or `|f| e^{rate |x|^2 / 2}`
/// (Gaussian) level off on the sampled range? Exponential certificates also
/// need a stable fitted rate, which rules out polynomial decay.
pub fn certify_decay(f: &SampledFunction, kind: DecayKind, rate: f64) -> Result<DecayCertificate> {
    if !(rate >= 0.0) {
        return invalid(format!("certificate rate must be nonnegative (got {rate})"));
    }
    let samples: Vec<EnvelopeSample> = f
        .values
        .indexed_iter()
        .map(|(idx, v)| {
            let x = f.grid.point(&idx);
            let r = x.iter().map(|c| c * c).sum::<f64>().sqrt();
            let exponent = if kind == DecayKind::Exponential { rate * r } else { 0.5 * rate * r * r };
            EnvelopeSample { radius: r, exponent, magnitude: v.norm() }
        })
        .collect();
    let Plateau { inner_sup, outer_sup, plateau } = envelope_plateau(&samples, PLATEAU_SLACK);
    let stable = if kind == DecayKind::Exponential {
        fit_decay_hypothesis(f, DecayKind::Exponential, Side::Function).map(|h| h.stable).unwrap_or(false)
    } else {
        true
    };
    Ok(DecayCertificate { kind, rate, inner_sup, outer_sup, stable, certified: plateau && stable })
}
