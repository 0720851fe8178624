//! Converse mapping checks: for `F` with certified phase-space decay,
//! `W(F)` should send every `phi` in L2 into an analytic (or entire) space.
//! Tested on random finite Hermite combinations.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bargmann::bounds::Regime;
use crate::error::{Error, Result};
use crate::numerics::envelope::{envelope_plateau_with_floor, EnvelopeSample};
use crate::numerics::fourier::fourier_transform;
use crate::numerics::function::{PhaseSpaceFunction, SampledFunction};
use crate::numerics::grid::GridSpec;
use crate::semigroups::membership::{entire_membership, poisson_membership, Space, Verdict};
use crate::special::coeffs::{hermite_coeffs, synthesize_on_grid, HermiteCoefficients};
use crate::wigner::weyl::{weyl_apply_kernel, weyl_matrix_spectral};
use crate::C64;

use super::certify::{certify_phase, PHASE_NOISE_FLOOR, PLATEAU_SLACK};
use super::factorize::default_trunc;

/// Largest degree of the random test functions.
pub const RANDOM_DEGREE: usize = 4;
/// Slack on the operator-norm bound for the weighted output norm.
pub const NORM_SLACK: f64 = 1.05;

/// Unit-norm table with independent uniform real and imaginary parts on
/// every index of level at most `degree`.
pub fn random_coefficients(rng: &mut impl Rng, n: usize, degree: usize) -> HermiteCoefficients {
    let mut c = HermiteCoefficients::zeros(n, degree);
    for v in c.values.iter_mut() {
        *v = C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    }
    let norm = c.norm_sq().sqrt();
    c.values.iter_mut().for_each(|v| *v /= norm);
    c
}

/// Unit-norm random combination of Hermite functions of degree at most `degree`.
pub fn random_hermite_function(rng: &mut impl Rng, grid: &GridSpec, degree: usize) -> SampledFunction {
    synthesize_on_grid(&random_coefficients(rng, grid.dim(), degree), grid)
}

#[derive(Clone, Debug, Serialize)]
pub struct MappingTrial {
    pub pointwise: bool,
    pub fourier_pointwise: bool,
    pub verdict: Verdict,
    /// Weighted norm of `W(F) phi` in the target space.
    pub norm: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MappingReport {
    pub space: Space,
    pub t: f64,
    pub s: f64,
    /// Largest admissible `s` for the given `t`.
    pub threshold: f64,
    pub trials: Vec<MappingTrial>,
    /// Operator norm of the truncated Weyl matrix in the weighted norm.
    pub norm_bound: f64,
    /// Max over min of the trial norms; reported, not asserted.
    pub spread: f64,
    pub passed: bool,
}

fn plateau_1d(f: &SampledFunction, regime: Regime, rate: f64) -> bool {
    let samples: Vec<EnvelopeSample> = f
        .values
        .indexed_iter()
        .map(|(idx, v)| {
            let r = f.grid.point(&idx).iter().map(|c| c * c).sum::<f64>().sqrt();
            let exponent = match regime {
                Regime::Exponential => rate * r,
                Regime::Gaussian => rate * r * r,
            };
            EnvelopeSample { radius: r, exponent, magnitude: v.norm() }
        })
        .collect();
    envelope_plateau_with_floor(&samples, PLATEAU_SLACK, PHASE_NOISE_FLOOR).plateau
}

struct Setup {
    space: Space,
    regime: Regime,
    cert_rate: f64,
    pointwise_rate: f64,
    threshold: f64,
    ln_weight: Box<dyn Fn(usize) -> f64>,
}

fn run(f: &PhaseSpaceFunction, t: f64, s: f64, trials: usize, seed: u64, setup: Setup) -> Result<MappingReport> {
    if !(t > 0.0 && s > 0.0) || trials == 0 {
        return Err(Error::InvalidArgument("t, s and trials must be positive".into()));
    }
    if s >= setup.threshold {
        return Err(Error::Precondition(format!("s = {s} is not below the admissible {}", setup.threshold)));
    }
    if !certify_phase(f, setup.regime, setup.cert_rate).certified {
        return Err(Error::Precondition(format!("F has no {:?} certificate at rate {}", setup.regime, setup.cert_rate)));
    }
    let n = f.n();
    let grid = f.x_grid();
    let trunc = default_trunc(n).min(30);

    let m = weyl_matrix_spectral(f, trunc);
    let mut weighted = m.clone();
    for (a, alpha) in m.indices.iter().enumerate() {
        let w = (setup.ln_weight)(HermiteCoefficients::level(alpha)).exp();
        weighted.matrix.row_mut(a).mapv_inplace(|v| v * w);
    }
    let norm_bound = weighted.op_norm();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let phi = random_hermite_function(&mut rng, &grid, RANDOM_DEGREE);
        let psi = weyl_apply_kernel(f, &phi)?;
        // the kernel route leaves quadrature noise well above round-off
        let c = hermite_coeffs(&psi, trunc).denoise(PHASE_NOISE_FLOOR);
        let report = match setup.space {
            Space::HeatImage => entire_membership(&c, s),
            _ => poisson_membership(&c, s),
        };
        out.push(MappingTrial {
            pointwise: plateau_1d(&psi, setup.regime, setup.pointwise_rate),
            fourier_pointwise: plateau_1d(&fourier_transform(&psi), setup.regime, setup.pointwise_rate),
            verdict: report.verdict,
            norm: report.weighted_sum.sqrt(),
        });
    }
    let max = out.iter().map(|r| r.norm).fold(0.0, f64::max);
    let min = out.iter().map(|r| r.norm).fold(f64::INFINITY, f64::min);
    let spread = if max == 0.0 { 1.0 } else { max / min };
    let passed = out
        .iter()
        .all(|r| r.pointwise && r.fourier_pointwise && r.verdict != Verdict::Growing && r.norm <= NORM_SLACK * norm_bound + 1e-12);
    Ok(MappingReport { space: setup.space, t, s, threshold: setup.threshold, trials: out, norm_bound, spread, passed })
}

/// `W(F)` into the analytic space at `s < t / (2 sqrt(2n))`, for `F` with
/// exponential certificates at rate `t`. Outputs must decay like
/// `e^{-t|xi|/2}` on both sides.
pub fn weyl_maps_into_ms_check(f: &PhaseSpaceFunction, t: f64, s: f64, trials: usize, seed: u64) -> Result<MappingReport> {
    let n = f.n() as f64;
    let setup = Setup {
        space: Space::PoissonImage,
        regime: Regime::Exponential,
        cert_rate: t,
        pointwise_rate: t / 2.0,
        threshold: t / (2.0 * (2.0 * n).sqrt()),
        ln_weight: Box::new(move |k| s * (2.0 * k as f64 + n).sqrt()),
    };
    run(f, t, s, trials, seed, setup)
}

/// `W(F)` into the entire space at `s < t / (2n)`, for `F` with Gaussian
/// certificates at `tanh t`. Outputs must decay like `e^{-tanh(t) xi^2 / 2}`.
pub fn weyl_maps_into_es_check(f: &PhaseSpaceFunction, t: f64, s: f64, trials: usize, seed: u64) -> Result<MappingReport> {
    let n = f.n() as f64;
    let setup = Setup {
        space: Space::HeatImage,
        regime: Regime::Gaussian,
        cert_rate: t.tanh(),
        pointwise_rate: 0.5 * t.tanh(),
        threshold: t / (2.0 * n),
        ln_weight: Box::new(move |k| s * (2.0 * k as f64 + n)),
    };
    run(f, t, s, trials, seed, setup)
}
