//! Membership tests for the spaces `M_t` (Poisson-Hermite image), `V_t`
//! (analytic vectors of exponential type) and `E_t` (heat image), all read off
//! weighted sums of Hermite coefficients.

use serde::Serialize;

use crate::special::coeffs::HermiteCoefficients;
use crate::special::laguerre::ln_laguerre_imaginary_row;

/// Coefficients below this fraction of the largest one count as zero.
pub const COEFFICIENT_FLOOR: f64 = 1e-13;
/// Slope threshold of the tail rule.
pub const TAIL_EPSILON: f64 = 0.01;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Space {
    PoissonImage,
    Analytic,
    HeatImage,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Converged,
    Growing,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub space: Space,
    pub t: f64,
    pub weighted_sum: f64,
    pub verdict: Verdict,
    /// Least-squares slope of `ln(term_k)` over the last third of the levels.
    pub tail_slope: f64,
}

/// Tail rule on `ln(term_k)`, `k = 0..`; `None` marks a zero term.
///
/// The range ends at the last nonzero term, so coefficients that drop below
/// the noise floor do not count as a vanishing tail. Fewer than three nonzero
/// terms in the last third means the tail vanishes.
pub fn tail_verdict(ln_terms: &[Option<f64>]) -> (Verdict, f64) {
    let len = ln_terms.iter().rposition(|v| v.is_some()).map_or(0, |k| k + 1);
    let start = len - len / 3;
    let pts: Vec<(f64, f64)> = (start..len).filter_map(|k| ln_terms[k].map(|v| (k as f64, v))).collect();
    if pts.len() < 3 {
        return (Verdict::Converged, f64::NEG_INFINITY);
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let verdict = if slope < -TAIL_EPSILON {
        Verdict::Converged
    } else if slope > TAIL_EPSILON {
        Verdict::Growing
    } else {
        Verdict::Inconclusive
    };
    (verdict, slope)
}

/// Generic weighted test: `term_k = ||P_k c||^2 e^{ln_weight(k)}`. The table
/// is used as given; the named tests below drop round-off first.
pub fn weighted_membership(c: &HermiteCoefficients, space: Space, t: f64, ln_weight: impl Fn(usize) -> f64) -> MembershipReport {
    let norms = c.level_norms_sq();
    let ln_terms: Vec<Option<f64>> = norms
        .iter()
        .enumerate()
        .map(|(k, &v)| if v > 0.0 { Some(v.ln() + ln_weight(k)) } else { None })
        .collect();
    let weighted_sum = ln_terms.iter().flatten().map(|v| v.exp()).sum();
    let (verdict, tail_slope) = tail_verdict(&ln_terms);
    MembershipReport { space, t, weighted_sum, verdict, tail_slope }
}

fn ln_factorial_ratio(k: usize, n: usize) -> f64 {
    // ln( k! (n-1)! / (k+n-1)! )
    (1..n).map(|j| (j as f64).ln() - ((k + j) as f64).ln()).sum()
}

/// `V_t` test: weights `k!(n-1)!/(k+n-1)! L_k^{n-1}(-2t^2) e^{t^2}`, the worst
/// case over `|y|^2 + |v|^2 = t^2`.
pub fn analytic_membership(c: &HermiteCoefficients, t: f64) -> MembershipReport {
    let n = c.n;
    let ln_lag = ln_laguerre_imaginary_row(c.trunc, n - 1, t * t);
    weighted_membership(&c.denoise(COEFFICIENT_FLOOR), Space::Analytic, t, |k| ln_factorial_ratio(k, n) + ln_lag[k])
}

pub fn entire_weight(n: usize, t: f64) -> impl Fn(usize) -> f64 {
    move |k| 2.0 * (2.0 * k as f64 + n as f64) * t
}

/// `E_t` test: weights `e^{2(2k+n)t}`.
pub fn entire_membership(c: &HermiteCoefficients, t: f64) -> MembershipReport {
    weighted_membership(&c.denoise(COEFFICIENT_FLOOR), Space::HeatImage, t, entire_weight(c.n, t))
}

/// `M_t` test: weights `e^{2t sqrt(2k+n)}`.
pub fn poisson_membership(c: &HermiteCoefficients, t: f64) -> MembershipReport {
    let n = c.n as f64;
    weighted_membership(&c.denoise(COEFFICIENT_FLOOR), Space::PoissonImage, t, |k| 2.0 * t * (2.0 * k as f64 + n).sqrt())
}
