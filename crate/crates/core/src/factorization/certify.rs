//! Decay certificates for phase-space functions in the two partial Fourier
//! pictures: `F_1 F` against `x^2 + u^2/4` and `F_2 F` against `x^2/4 + u^2`.

use serde::Serialize;

use crate::bargmann::bounds::Regime;
use crate::numerics::envelope::{envelope_plateau_with_floor, EnvelopeSample, Plateau};
use crate::numerics::fourier::{partial_fourier_1, partial_fourier_2};
use crate::numerics::function::PhaseSpaceFunction;

pub const PLATEAU_SLACK: f64 = 0.05;
/// Phase-space functions built by transforming sampled vectors carry
/// quadrature error near `1e-8` relative; samples below this are ignored.
pub const PHASE_NOISE_FLOOR: f64 = 1e-7;
/// Largest `t` tried when fitting a certificate rate.
pub const MAX_FITTED_T: f64 = 2.0;

#[derive(Clone, Debug, Serialize)]
pub struct PhaseCertificate {
    pub regime: Regime,
    /// `t` for `e^{-t q^{1/2}}`, or `kappa` for `e^{-kappa q}`.
    pub rate: f64,
    pub first: Plateau,
    pub second: Plateau,
    pub certified: bool,
}

fn quadratic(x: &[f64], u: &[f64], wx: f64, wu: f64) -> f64 {
    x.iter().map(|v| wx * v * v).sum::<f64>() + u.iter().map(|v| wu * v * v).sum::<f64>()
}

fn plateau_of(f: &PhaseSpaceFunction, regime: Regime, rate: f64, wx: f64, wu: f64) -> Plateau {
    let n = f.n();
    let samples: Vec<EnvelopeSample> = f
        .values
        .indexed_iter()
        .map(|(idx, v)| {
            let p = f.grid.point(&idx);
            let q = quadratic(&p[..n], &p[n..], wx, wu);
            let exponent = match regime {
                Regime::Exponential => rate * q.sqrt(),
                Regime::Gaussian => rate * q,
            };
            EnvelopeSample { radius: q.sqrt(), exponent, magnitude: v.norm() }
        })
        .collect();
    envelope_plateau_with_floor(&samples, PLATEAU_SLACK, PHASE_NOISE_FLOOR)
}

/// Certificate for `F` given the two partial transforms.
pub fn certify_transforms(f1: &PhaseSpaceFunction, f2: &PhaseSpaceFunction, regime: Regime, rate: f64) -> PhaseCertificate {
    let first = plateau_of(f1, regime, rate, 1.0, 0.25);
    let second = plateau_of(f2, regime, rate, 0.25, 1.0);
    PhaseCertificate { regime, rate, first, second, certified: first.plateau && second.plateau }
}

pub fn certify_phase(f: &PhaseSpaceFunction, regime: Regime, rate: f64) -> PhaseCertificate {
    certify_transforms(&partial_fourier_1(f), &partial_fourier_2(f), regime, rate)
}

/// Largest `t` on the ladder `0.1, 0.2, .., 2.0` whose certificates hold;
/// Gaussian certificates are taken at `kappa = tanh t`. Returns `None` when
/// even `t = 0.1` fails.
pub fn fit_phase_t(f: &PhaseSpaceFunction, regime: Regime) -> Option<f64> {
    let f1 = partial_fourier_1(f);
    let f2 = partial_fourier_2(f);
    let steps = (MAX_FITTED_T * 10.0).round() as usize;
    let mut best = None;
    for i in 1..=steps {
        let t = 0.1 * i as f64;
        let rate = match regime {
            Regime::Exponential => t,
            Regime::Gaussian => t.tanh(),
        };
        if certify_transforms(&f1, &f2, regime, rate).certified {
            best = Some(t);
        } else {
            break;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::GridSpec;
    use crate::semigroups::heat::special_hermite_heat_kernel;

    #[test]
    fn heat_kernel_rate_is_recovered() {
        let phase = GridSpec::gauss_hermite(2, 64, 1.0).unwrap();
        let p = special_hermite_heat_kernel(0.5, &phase).unwrap();
        let t = fit_phase_t(&p, Regime::Gaussian).unwrap();
        assert!((t - 0.5).abs() < 1e-9, "{t}");
        assert!(certify_phase(&p, Regime::Exponential, 1.0).certified);
    }
}
