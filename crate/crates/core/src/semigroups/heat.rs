//! Heat kernel of the special Hermite operator,
//! `p_t(x, u) = c (sinh t)^{-n} e^{-coth(t) (|x|^2 + |u|^2) / 4}`.
//!
//! The normalizing constant is fixed numerically by `W(p_t) Phi_0 = e^{-nt} Phi_0`.

use crate::error::{invalid, Error, Result};
use crate::numerics::function::PhaseSpaceFunction;
use crate::numerics::grid::GridSpec;
use crate::wigner::weyl::weyl_matrix_spectral;
use crate::C64;

/// Largest accepted disagreement between two calibration times.
pub const CALIBRATION_TOLERANCE: f64 = 1e-5;

/// `p_t` without its constant.
pub fn heat_kernel_shape(t: f64, phase: &GridSpec) -> Result<PhaseSpaceFunction> {
    if !(t > 0.0) {
        return invalid(format!("heat kernel needs t > 0 (t = {t})"));
    }
    let n = phase.dim() / 2;
    let pre = t.sinh().powi(-(n as i32));
    let coth = 1.0 / t.tanh();
    Ok(PhaseSpaceFunction::from_fn(phase, |x, u| {
        let r2: f64 = x.iter().chain(u).map(|v| v * v).sum();
        C64::new(pre * (-0.25 * coth * r2).exp(), 0.0)
    }))
}

fn calibration_grid(n: usize) -> Result<GridSpec> {
    GridSpec::gauss_hermite(2 * n, if n == 1 { 64 } else { 28 }, 1.0)
}

fn constant_at(n: usize, t: f64) -> Result<f64> {
    let shape = heat_kernel_shape(t, &calibration_grid(n)?)?;
    let m00 = weyl_matrix_spectral(&shape, 0).matrix[[0, 0]].re;
    Ok((-(n as f64) * t).exp() / m00)
}

/// Constant `c` for dimension `n`, fixed at `t_ref` and re-checked at a
/// second time.
pub fn calibrate_heat_constant(n: usize, t_ref: f64) -> Result<f64> {
    if !(0.25..=1.0).contains(&t_ref) {
        return invalid(format!("calibration time must lie in [0.25, 1] (got {t_ref})"));
    }
    let c = constant_at(n, t_ref)?;
    let other = if t_ref + 0.3 <= 1.0 { t_ref + 0.3 } else { t_ref - 0.3 };
    let d = constant_at(n, other)?;
    if !((c - d).abs() <= CALIBRATION_TOLERANCE * c.abs()) || !(c > 0.0) {
        return Err(Error::Calibration(format!("heat constant {c:e} at t = {t_ref} vs {d:e} at t = {other}")));
    }
    Ok(c)
}

/// Calibrated heat kernel on `phase`.
pub fn special_hermite_heat_kernel(t: f64, phase: &GridSpec) -> Result<PhaseSpaceFunction> {
    let c = calibrate_heat_constant(phase.dim() / 2, 0.5)?;
    Ok(heat_kernel_shape(t, phase)?.scaled(C64::new(c, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wigner::twisted::twisted_convolution;
    use crate::wigner::weyl::WeylOperatorMatrix;
    use std::f64::consts::PI;

    #[test]
    fn constant_is_time_independent_and_closed_form() {
        let a = calibrate_heat_constant(1, 0.5).unwrap();
        let b = calibrate_heat_constant(1, 0.8).unwrap();
        assert!((a - b).abs() < 1e-6 * a);
        assert!((a - 1.0 / (4.0 * PI)).abs() < 1e-9);
        assert!(calibrate_heat_constant(1, 0.1).is_err());
    }

    #[test]
    fn weyl_transform_is_the_hermite_semigroup() {
        let phase = GridSpec::gauss_hermite(2, 64, 1.0).unwrap();
        for t in [0.5, 0.8] {
            let p = special_hermite_heat_kernel(t, &phase).unwrap();
            assert!(p.values.iter().all(|v| v.re > 0.0));
            let m = weyl_matrix_spectral(&p, 10);
            let expect = WeylOperatorMatrix::from_levels(1, 10, |k| C64::new((-(2.0 * k as f64 + 1.0) * t).exp(), 0.0));
            assert!(m.max_diff(&expect).unwrap() < 1e-6);
        }
    }

    #[test]
    fn semigroup_law_by_twisted_convolution() {
        let phase = GridSpec::gauss_hermite(2, 48, 1.0).unwrap();
        let pt = special_hermite_heat_kernel(0.5, &phase).unwrap();
        let ps = special_hermite_heat_kernel(0.7, &phase).unwrap();
        let sum = special_hermite_heat_kernel(1.2, &phase).unwrap();
        let prod = twisted_convolution(&pt, &ps, 1.0).unwrap();
        assert!(prod.max_diff(&sum).unwrap() < 1e-6, "{}", prod.max_diff(&sum).unwrap());
    }

    #[test]
    fn nonpositive_time_rejected() {
        let phase = GridSpec::gauss_hermite(2, 8, 1.0).unwrap();
        assert!(heat_kernel_shape(0.0, &phase).is_err());
        assert!(special_hermite_heat_kernel(-1.0, &phase).is_err());
    }
}
