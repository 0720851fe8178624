//! Hardy-type trichotomy for joint Gaussian decay of `f` and `f^`:
//! `ab > 1` forces `f = 0`, `ab = 1` leaves Gaussians (times a factor of order
//! two and minimal type), `ab < 1` leaves an infinite-dimensional class.

use serde::Serialize;

use crate::bargmann::decay::{fit_decay_hypothesis, DecayHypothesis, DecayKind, Side};
use crate::error::{Error, Result};
use crate::numerics::fourier::fourier_transform;
use crate::numerics::function::SampledFunction;
use crate::semigroups::membership::{entire_weight, weighted_membership, Space, Verdict, COEFFICIENT_FLOOR};
use crate::special::coeffs::{hermite_coeffs, HermiteCoefficients};

pub const DEFAULT_BAND: f64 = 0.02;
/// Fitted polynomial degree above which the boundary case is reported as
/// "Gaussian times a nonconstant factor".
pub const DEGREE_THRESHOLD: f64 = 0.5;
const CLASSIFY_TRUNC: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HardyCase {
    #[serde(rename = "case-i")]
    ForcedZero,
    #[serde(rename = "case-ii")]
    Gaussian,
    #[serde(rename = "case-ii-extended")]
    GaussianTimesMinimalType,
    #[serde(rename = "case-iii")]
    NontrivialClass,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalTypeReport {
    pub ladder: Vec<(f64, Verdict)>,
    pub passes_all: bool,
    pub largest_passing: Option<f64>,
}

/// Ladder test `|c_a| <= C(s) e^{-(2|a|+n)s}` for `s = 0.1, ..., 1.0`, read
/// through the tail rule on `|c_a|^2 e^{2(2|a|+n)s}`; a step passes unless the
/// weighted terms grow. The table is used as given, so coefficients computed
/// by quadrature should be denoised first.
pub fn minimal_type_check(c: &HermiteCoefficients) -> MinimalTypeReport {
    let ladder: Vec<(f64, Verdict)> = (1..=10)
        .map(|i| {
            let s = 0.1 * i as f64;
            (s, weighted_membership(c, Space::HeatImage, s, entire_weight(c.n, s)).verdict)
        })
        .collect();
    let passes_all = ladder.iter().all(|(_, v)| *v != Verdict::Growing);
    let largest_passing = ladder.iter().take_while(|(_, v)| *v != Verdict::Growing).last().map(|(s, _)| *s);
    MinimalTypeReport { ladder, passes_all, largest_passing }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub a: f64,
    pub b: f64,
    pub ab: f64,
    pub band: f64,
    pub verdict: HardyCase,
    pub function_fit: DecayHypothesis,
    pub fourier_fit: DecayHypothesis,
    /// Least-squares slope of `ln |c_k|` over the nonzero Hermite coefficients.
    pub coefficient_slope: f64,
    /// Present in the boundary case.
    pub minimal_type: Option<MinimalTypeReport>,
}

fn coefficient_slope(c: &HermiteCoefficients) -> f64 {
    let pts: Vec<(f64, f64)> = c
        .level_norms_sq()
        .iter()
        .enumerate()
        .filter(|(_, v)| **v > 0.0)
        .map(|(k, v)| (k as f64, 0.5 * v.ln()))
        .collect();
    if pts.len() < 2 {
        return f64::NEG_INFINITY;
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

/// Classifies `f` by the fitted Gaussian rates of `f` and `f^` (computed on
/// the grid of `f` when not supplied).
pub fn hardy_classify(f: &SampledFunction, fhat: Option<&SampledFunction>, band: f64) -> Result<ClassificationResult> {
    let computed;
    let fhat = match fhat {
        Some(g) => g,
        None => {
            computed = fourier_transform(f);
            &computed
        }
    };
    let unclassifiable = |e: Error| Error::Precondition(format!("unclassifiable: {e}"));
    let function_fit = fit_decay_hypothesis(f, DecayKind::GaussianPolynomial, Side::Function).map_err(unclassifiable)?;
    let fourier_fit = fit_decay_hypothesis(fhat, DecayKind::GaussianPolynomial, Side::Fourier).map_err(unclassifiable)?;
    let (a, b) = (function_fit.rate, fourier_fit.rate);
    let ab = a * b;
    let c = hermite_coeffs(f, CLASSIFY_TRUNC).denoise(COEFFICIENT_FLOOR);
    let coefficient_slope = coefficient_slope(&c);
    let (verdict, minimal_type) = if ab > 1.0 + band {
        (HardyCase::ForcedZero, None)
    } else if ab < 1.0 - band {
        (HardyCase::NontrivialClass, None)
    } else {
        let extended = function_fit.degree.abs().max(fourier_fit.degree.abs()) >= DEGREE_THRESHOLD;
        let v = if extended { HardyCase::GaussianTimesMinimalType } else { HardyCase::Gaussian };
        (v, Some(minimal_type_check(&c)))
    };
    Ok(ClassificationResult { a, b, ab, band, verdict, function_fit, fourier_fit, coefficient_slope, minimal_type })
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseIProbe {
    pub a: f64,
    pub b: f64,
    pub extents: Vec<f64>,
    /// Log of the largest amplitude `A` such that `A e^{-c x^2/2}` and its
    /// transform both stay under the envelopes on `|x| <= L`, maximized over `c`.
    pub ln_amplitudes: Vec<f64>,
    pub forced_zero: bool,
}

/// Amplitude floor below which a candidate counts as zero.
pub const AMPLITUDE_FLOOR: f64 = 1e-12;

/// Tries to fit a nonzero Gaussian `e^{-c x^2/2}` (transform
/// `c^{-1/2} e^{-x^2/(2c)}`) under `e^{-a x^2/2}` and `e^{-b x^2/2}` on
/// growing intervals.
pub fn case_i_probe(a: f64, b: f64) -> CaseIProbe {
    let extents = vec![10.0, 20.0, 40.0, 80.0];
    let ln_amplitudes: Vec<f64> = extents
        .iter()
        .map(|&l: &f64| {
            (0..=1200)
                .map(|i| {
                    let c = 10f64.powf(-3.0 + 6.0 * i as f64 / 1200.0);
                    let direct = -0.5 * (a - c).max(0.0) * l * l;
                    let fourier = 0.5 * c.ln() - 0.5 * (b - 1.0 / c).max(0.0) * l * l;
                    direct.min(fourier)
                })
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    let forced_zero = *ln_amplitudes.last().unwrap() < AMPLITUDE_FLOOR.ln();
    CaseIProbe { a, b, extents, ln_amplitudes, forced_zero }
}
