//! Radial reduction: for `F(z) = F0(|z|)` on `R^{2n}` the Weyl transform is
//! diagonal in the Hermite levels,
//! `W(F) = c_n sum_k k!/(k+n-1)! (int_0^inf F0(s) phi_k(s) s^{2n-1} ds) P_k`
//! with `phi_k(s) = L_k^{n-1}(s^2/2) e^{-s^2/4}`.

use std::f64::consts::PI;

use crate::error::{invalid, Result};
use crate::special::laguerre::{gauss_laguerre_nodes, laguerre_row};
use crate::wigner::weyl::WeylOperatorMatrix;
use crate::C64;

const RADIAL_NODES: usize = 96;

/// Level multipliers of `W(F)` for a radial `F`.
#[derive(Clone, Debug)]
pub struct RadialWeyl {
    pub n: usize,
    pub constant: f64,
    pub levels: Vec<f64>,
}

impl RadialWeyl {
    pub fn to_matrix(&self) -> WeylOperatorMatrix {
        let trunc = self.levels.len() - 1;
        WeylOperatorMatrix::from_levels(self.n, trunc, |k| C64::new(self.levels[k], 0.0))
    }
}

fn factorial_ratio(k: usize, n: usize) -> f64 {
    // k! / (k+n-1)!
    (k + 1..k + n).map(|j| 1.0 / j as f64).product()
}

/// `int_0^inf F0(s) phi_k(s) s^{2n-1} ds` for `k <= trunc` with `m` nodes.
///
/// With `r = s^2 / 2` this is `int_0^inf F0(sqrt(2r)) L_k(r) e^{-r/2} (2r)^{n-1} dr`,
/// done by generalized Gauss-Laguerre with `a = n - 1`.
fn laguerre_moments(f: &dyn Fn(f64) -> f64, n: usize, trunc: usize, m: usize) -> Result<Vec<f64>> {
    let a = n - 1;
    let (nodes, weights) = gauss_laguerre_nodes(m, a)?;
    let scale = 2f64.powi(a as i32);
    let mut out = vec![0.0; trunc + 1];
    for (&r, &w) in nodes.iter().zip(&weights) {
        let g = f((2.0 * r).sqrt()) * (0.5 * r).exp() * scale * w;
        if !g.is_finite() {
            return invalid("radial integrand is not finite at a quadrature node");
        }
        for (k, l) in laguerre_row(trunc, a as f64, r).into_iter().enumerate() {
            out[k] += g * l;
        }
    }
    Ok(out)
}

/// Calibrated constant `c_n`, fixed by `W(phi_0) = (2 pi)^n P_0`.
pub fn radial_constant(n: usize) -> Result<f64> {
    if n == 0 {
        return invalid("dimension must be positive");
    }
    let phi0 = |s: f64| (-s * s / 4.0).exp();
    let i0 = laguerre_moments(&phi0, n, 0, RADIAL_NODES)?[0];
    Ok((2.0 * PI).powi(n as i32) / (factorial_ratio(0, n) * i0))
}

/// Level multipliers for radial `F0`. Fails if the radial integrals do not
/// settle when the quadrature is doubled.
pub fn weyl_radial_laguerre(f: impl Fn(f64) -> f64, n: usize, trunc: usize) -> Result<RadialWeyl> {
    let constant = radial_constant(n)?;
    let coarse = laguerre_moments(&f, n, trunc, RADIAL_NODES)?;
    let fine = laguerre_moments(&f, n, trunc, 2 * RADIAL_NODES)?;
    let size = fine.iter().map(|v| v.abs()).fold(1e-300, f64::max);
    for (k, (c, d)) in coarse.iter().zip(&fine).enumerate() {
        if (c - d).abs() > 1e-6 * size {
            return invalid(format!("radial integral at level {k} does not converge ({c:e} vs {d:e})"));
        }
    }
    let levels = fine.iter().enumerate().map(|(k, &v)| constant * factorial_ratio(k, n) * v).collect();
    Ok(RadialWeyl { n, constant, levels })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::GridSpec;
    use crate::numerics::function::PhaseSpaceFunction;
    use crate::special::laguerre::laguerre_function;
    use crate::wigner::weyl::weyl_matrix_spectral;

    #[test]
    fn constant_matches_closed_form() {
        for n in 1..=3 {
            let c = radial_constant(n).unwrap();
            let exact = (2.0 * PI).powi(n as i32) / 2f64.powi(n as i32 - 1);
            assert!((c / exact - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn laguerre_functions_give_projections() {
        for n in 1..=2 {
            for j in 0..=10 {
                let r = weyl_radial_laguerre(|s| laguerre_function(j, n - 1, s), n, 12).unwrap();
                for (k, v) in r.levels.iter().enumerate() {
                    let expect = if k == j { (2.0 * PI).powi(n as i32) } else { 0.0 };
                    assert!((v - expect).abs() < 1e-8 * (2.0 * PI).powi(n as i32), "n={n} j={j} k={k} {v}");
                }
            }
        }
    }

    #[test]
    fn divergent_profile_is_rejected() {
        assert!(weyl_radial_laguerre(|s| (s * s / 2.0).exp(), 1, 4).is_err());
        assert!(weyl_radial_laguerre(|s| (s * s / 4.0).exp(), 2, 4).is_err());
    }

    #[test]
    fn agrees_with_full_weyl_matrix() {
        let phase = GridSpec::gauss_hermite(2, 64, 1.0).unwrap();
        let prof = |s: f64| (-s * s / 3.0).exp() * (1.0 + 0.2 * s * s);
        let f = PhaseSpaceFunction::from_fn(&phase, |x, u| C64::new(prof((x[0] * x[0] + u[0] * u[0]).sqrt()), 0.0));
        let full = weyl_matrix_spectral(&f, 8);
        let radial = weyl_radial_laguerre(prof, 1, 8).unwrap().to_matrix();
        assert!(full.max_diff(&radial).unwrap() < 1e-6, "{}", full.max_diff(&radial).unwrap());
        assert!(full.off_level_max() < 1e-8);
    }
}
