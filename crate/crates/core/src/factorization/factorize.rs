//! Constructive factorizations `phi = W(h) f` with `h` built from `phi`
//! itself: since `W(V(a, b)) f = (2 pi)^{n/2} (f, b~) a~`, the choice
//! `h = (2 pi)^{-n/2} (f, phi)^{-1} V(phi~, phi~)` reproduces `phi`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::bargmann::bounds::Regime;
use crate::error::{Error, Result};
use crate::numerics::function::{inner_product, reflect, PhaseSpaceFunction, SampledFunction};
use crate::semigroups::heat::special_hermite_heat_kernel;
use crate::semigroups::membership::{poisson_membership, Verdict};
use crate::semigroups::multipliers::hermite_semigroup;
use crate::special::coeffs::{hermite_coeffs, synthesize_on_grid};
use crate::wigner::weyl::weyl_apply_kernel;
use crate::wigner::wigner::wigner_transform;
use crate::C64;

use super::certify::{certify_phase, PhaseCertificate};

/// Pairings at or below this size are refused.
pub const PAIRING_FLOOR: f64 = 1e-8;

/// Hermite truncation used when `phi` is analysed on its grid.
pub fn default_trunc(n: usize) -> usize {
    if n == 1 {
        48
    } else {
        20
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorizationReport {
    pub n: usize,
    pub t: f64,
    pub pairing: C64,
    /// Relative L2 error of `W(h) f` against `phi`.
    pub reconstruction_error: f64,
    pub certificate: PhaseCertificate,
    /// Relative error of `W(p_t) phi_0` against `e^{-tH} phi_0`; entire case only.
    pub kernel_route_error: Option<f64>,
    pub membership: Option<Verdict>,
}

fn relative_error(a: &SampledFunction, b: &SampledFunction) -> Result<f64> {
    let d = a.sub(b)?.norm();
    let s = b.norm();
    Ok(if s > 0.0 { d / s } else { d })
}

/// `h = (2 pi)^{-n/2} (f, phi)^{-1} V(phi~, phi~)` and the reconstruction error.
fn build(phi: &SampledFunction, f: &SampledFunction) -> Result<(PhaseSpaceFunction, C64, f64)> {
    let pairing = inner_product(f, phi)?;
    if pairing.norm() <= PAIRING_FLOOR {
        return Err(Error::DegeneratePairing(pairing.norm()));
    }
    let n = phi.dim();
    let r = reflect(phi)?;
    let scale = (2.0 * PI).powf(-(n as f64) / 2.0) / pairing;
    let h = wigner_transform(&r, &r)?.scaled(scale);
    let back = weyl_apply_kernel(&h, f)?;
    let err = relative_error(&back, phi)?;
    Ok((h, pairing, err))
}

/// Factorization of an analytic vector. `phi` must pass the `M_t` membership
/// test; the decay of `h` is certified at the rate `t / sqrt 2`.
pub fn factorize_analytic(phi: &SampledFunction, f: &SampledFunction, t: f64) -> Result<(PhaseSpaceFunction, FactorizationReport)> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t must be positive (got {t})")));
    }
    let n = phi.dim();
    let membership = poisson_membership(&hermite_coeffs(phi, default_trunc(n)), t);
    if membership.verdict == Verdict::Growing {
        return Err(Error::Precondition(format!("phi is not in the analytic space at t = {t}")));
    }
    let (h, pairing, reconstruction_error) = build(phi, f)?;
    let certificate = certify_phase(&h, Regime::Exponential, t / 2f64.sqrt());
    let report = FactorizationReport {
        n,
        t,
        pairing,
        reconstruction_error,
        certificate,
        kernel_route_error: None,
        membership: Some(membership.verdict),
    };
    Ok((h, report))
}

/// Factorization of `phi = e^{-tH} phi_0`. Route (a) is the construction
/// above with Gaussian certificates at `tanh t`; route (b) applies the
/// special Hermite heat kernel `p_t` to `phi_0` directly.
pub fn factorize_entire(phi0: &SampledFunction, t: f64, f: &SampledFunction) -> Result<(PhaseSpaceFunction, FactorizationReport)> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument(format!("t must be positive (got {t})")));
    }
    let n = phi0.dim();
    let c0 = hermite_coeffs(phi0, default_trunc(n));
    let phi = synthesize_on_grid(&hermite_semigroup(&c0, t)?, &phi0.grid);
    let (h, pairing, reconstruction_error) = build(&phi, f)?;
    let certificate = certify_phase(&h, Regime::Gaussian, t.tanh());
    let phase = phi0.grid.concat(&phi0.grid);
    let p = special_hermite_heat_kernel(t, &phase)?;
    let kernel_route_error = relative_error(&weyl_apply_kernel(&p, phi0)?, &phi)?;
    let report = FactorizationReport {
        n,
        t,
        pairing,
        reconstruction_error,
        certificate,
        kernel_route_error: Some(kernel_route_error),
        membership: None,
    };
    Ok((h, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::GridSpec;
    use crate::semigroups::multipliers::poisson_hermite_semigroup;
    use crate::special::coeffs::HermiteCoefficients;
    use crate::special::hermite::hermite_fn;

    fn grid() -> GridSpec {
        GridSpec::gauss_hermite(1, 64, 1.0).unwrap()
    }

    fn phi_k(k: usize) -> SampledFunction {
        SampledFunction::from_real_fn(&grid(), |x| hermite_fn(k, x[0]))
    }

    #[test]
    fn poisson_image_of_ground_state() {
        let c = poisson_hermite_semigroup(&HermiteCoefficients::unit(1, 10, &[0]), 0.5).unwrap();
        let phi = synthesize_on_grid(&c, &grid());
        let (_, rep) = factorize_analytic(&phi, &phi_k(0), 0.5).unwrap();
        assert!(rep.reconstruction_error < 1e-6, "{rep:?}");
        assert!(rep.certificate.certified);
    }

    #[test]
    fn ground_state_reproduces_wigner_function() {
        let (h, rep) = factorize_analytic(&phi_k(0), &phi_k(0), 0.5).unwrap();
        let v = wigner_transform(&phi_k(0), &phi_k(0)).unwrap().scaled(C64::new((2.0 * PI).powf(-0.5), 0.0));
        assert!(h.max_diff(&v).unwrap() < 1e-12);
        assert!(rep.reconstruction_error < 1e-10);
    }

    #[test]
    fn orthogonal_pair_is_degenerate() {
        assert!(matches!(factorize_analytic(&phi_k(0), &phi_k(1), 0.5), Err(Error::DegeneratePairing(_))));
    }

    #[test]
    fn mixed_pair_reconstructs() {
        let g = grid();
        let phi = SampledFunction::from_fn(&g, |x| C64::new(hermite_fn(1, x[0]), 0.3 * hermite_fn(2, x[0])));
        let f = SampledFunction::from_fn(&g, |x| C64::new(hermite_fn(1, x[0]) + hermite_fn(3, x[0]), 0.0));
        let (_, rep) = factorize_analytic(&phi, &f, 0.5).unwrap();
        assert!(rep.reconstruction_error < 1e-6, "{rep:?}");
    }

    #[test]
    fn entire_routes_agree() {
        let (_, rep) = factorize_entire(&phi_k(0), 0.5, &phi_k(0)).unwrap();
        assert!(rep.reconstruction_error < 1e-6);
        assert!(rep.kernel_route_error.unwrap() < 1e-6, "{rep:?}");
        assert!(rep.certificate.certified, "{rep:?}");
        let mix = phi_k(1).add(&phi_k(4)).unwrap();
        let (_, rep) = factorize_entire(&mix, 0.5, &phi_k(1)).unwrap();
        assert!(rep.kernel_route_error.unwrap() < 1e-6, "{rep:?}");
    }

    #[test]
    fn zero_is_degenerate() {
        let z = SampledFunction::zeros(&grid());
        assert!(matches!(factorize_entire(&z, 0.5, &phi_k(0)), Err(Error::DegeneratePairing(_))));
    }
}
