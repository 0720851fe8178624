//! Hermite-coefficient bounds from joint decay of `psi` and its Fourier
//! transform:
//! exponential regime `|(psi, Phi_a)| <= C prod (2a_j+1)^{1/4} e^{-t sqrt(2|a|+n) / sqrt(2n)}`,
//! Gaussian regime `|(psi, Phi_a)| <= C prod (2a_j+1)^{-1/(4n)} e^{-(2|a|+n) t / (2n)}`.

use serde::Serialize;

use crate::bargmann::decay::{certify_decay, DecayCertificate, DecayKind};
use crate::error::{invalid, Result};
use crate::numerics::fourier::fourier_transform;
use crate::numerics::function::SampledFunction;
use crate::semigroups::membership::{tail_verdict, Verdict, COEFFICIENT_FLOOR};
use crate::special::coeffs::{hermite_coeffs, HermiteCoefficients};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Exponential,
    Gaussian,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Holds,
    Violated,
    PreconditionFailed,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub regime: Regime,
    pub t: f64,
    pub trunc: usize,
    pub status: BoundStatus,
    /// Smallest constant for which the bound holds on all computed levels.
    pub c_min: Option<f64>,
    pub budget: f64,
    /// Tail slope of `ln(|c| / bound)`; a growing tail fails the check.
    pub tail_slope: Option<f64>,
    pub function_certificate: DecayCertificate,
    pub fourier_certificate: DecayCertificate,
    /// `|c_K / c_{K-2}|` at the largest even level (one dimension).
    pub decay_ratio: Option<f64>,
}

pub fn exponential_bound(alpha: &[usize], t: f64) -> f64 {
    let n = alpha.len() as f64;
    let level: usize = alpha.iter().sum();
    let poly: f64 = alpha.iter().map(|&a| (2.0 * a as f64 + 1.0).powf(0.25)).product();
    poly * (-t / (2.0 * n).sqrt() * (2.0 * level as f64 + n).sqrt()).exp()
}

pub fn gaussian_bound(alpha: &[usize], t: f64) -> f64 {
    let n = alpha.len() as f64;
    let level: usize = alpha.iter().sum();
    let poly: f64 = alpha.iter().map(|&a| (2.0 * a as f64 + 1.0).powf(-0.25 / n)).product();
    poly * (-(2.0 * level as f64 + n) * t / (2.0 * n)).exp()
}

/// Compares a coefficient table with a bound; returns `(c_min, tail slope, verdict)`.
pub fn compare_with_bound(c: &HermiteCoefficients, bound: impl Fn(&[usize]) -> f64) -> (f64, f64, Verdict) {
    let c = c.denoise(COEFFICIENT_FLOOR);
    let mut per_level: Vec<Option<f64>> = vec![None; c.trunc + 1];
    let mut c_min: f64 = 0.0;
    for (a, v) in c.indices.iter().zip(&c.values) {
        if v.norm() == 0.0 {
            continue;
        }
        let r = v.norm() / bound(a);
        c_min = c_min.max(r);
        let k: usize = a.iter().sum();
        per_level[k] = Some(per_level[k].map_or(r.ln(), |p: f64| p.max(r.ln())));
    }
    let (verdict, slope) = tail_verdict(&per_level);
    (c_min, slope, verdict)
}

fn last_even_ratio(c: &HermiteCoefficients) -> Option<f64> {
    if c.n != 1 || c.trunc < 2 {
        return None;
    }
    let k = c.trunc - c.trunc % 2;
    let (hi, lo) = (c.get(&[k]).norm(), c.get(&[k - 2]).norm());
    (lo > 0.0).then(|| hi / lo)
}

fn run(psi: &SampledFunction, regime: Regime, t: f64, trunc: usize, budget: f64) -> Result<BoundReport> {
    if !(t > 0.0) {
        return invalid(format!("bound check needs t > 0 (t = {t})"));
    }
    let psi_hat = fourier_transform(psi);
    let (kind, rate) = match regime {
        Regime::Exponential => (DecayKind::Exponential, t),
        Regime::Gaussian => (DecayKind::Gaussian, (2.0 * t).tanh()),
    };
    let function_certificate = certify_decay(psi, kind, rate)?;
    let fourier_certificate = certify_decay(&psi_hat, kind, rate)?;
    let mut report = BoundReport {
        regime,
        t,
        trunc,
        status: BoundStatus::PreconditionFailed,
        c_min: None,
        budget,
        tail_slope: None,
        function_certificate,
        fourier_certificate,
        decay_ratio: None,
    };
    if !(report.function_certificate.certified && report.fourier_certificate.certified) {
        return Ok(report);
    }
    let c = hermite_coeffs(psi, trunc);
    let (c_min, slope, verdict) = match regime {
        Regime::Exponential => compare_with_bound(&c, |a| exponential_bound(a, t)),
        Regime::Gaussian => compare_with_bound(&c, |a| gaussian_bound(a, t)),
    };
    report.c_min = Some(c_min);
    report.tail_slope = Some(slope);
    if regime == Regime::Gaussian {
        report.decay_ratio = last_even_ratio(&c);
    }
    report.status = if c_min <= budget && verdict != Verdict::Growing { BoundStatus::Holds } else { BoundStatus::Violated };
    Ok(report)
}

/// Exponential-regime bound, after certifying `|psi|, |psi^| <= C e^{-t|x|}`.
pub fn coeff_bound_exponential_check(psi: &SampledFunction, t: f64, trunc: usize, budget: f64) -> Result<BoundReport> {
    run(psi, Regime::Exponential, t, trunc, budget)
}

/// Gaussian-regime bound, after certifying `|psi|, |psi^| <= C e^{-tanh(2t)|x|^2/2}`.
pub fn coeff_bound_gaussian_check(psi: &SampledFunction, t: f64, trunc: usize, budget: f64) -> Result<BoundReport> {
    run(psi, Regime::Gaussian, t, trunc, budget)
}
