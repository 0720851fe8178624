//! Hermite analysis and synthesis, spectral projections.

use ndarray::{Array2, ArrayD, IxDyn};

use crate::error::{invalid, Result};
use crate::numerics::function::SampledFunction;
use crate::numerics::grid::GridSpec;
use crate::numerics::tensor::apply_along_axis;
use crate::special::hermite::{hermite_row, hermite_row_complex, multi_indices, MultiIndex};
use crate::C64;

/// Coefficient table `c_alpha = (f, Phi_alpha)` for `|alpha| <= trunc`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteCoefficients {
    pub n: usize,
    pub trunc: usize,
    pub indices: Vec<MultiIndex>,
    pub values: Vec<C64>,
    /// Set when the truncation is too fine for the sampling grid.
    pub aliasing_warning: bool,
}

impl HermiteCoefficients {
    pub fn zeros(n: usize, trunc: usize) -> Self {
        let indices = multi_indices(n, trunc);
        let values = vec![C64::new(0.0, 0.0); indices.len()];
        HermiteCoefficients { n, trunc, indices, values, aliasing_warning: false }
    }

    pub fn from_fn(n: usize, trunc: usize, f: impl Fn(&[usize]) -> C64) -> Self {
        let mut c = Self::zeros(n, trunc);
        for (v, a) in c.values.iter_mut().zip(&c.indices) {
            *v = f(a);
        }
        c
    }

    /// Coefficients of a single `Phi_alpha`.
    pub fn unit(n: usize, trunc: usize, alpha: &[usize]) -> Self {
        Self::from_fn(n, trunc, |a| if a == alpha { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    /// One-dimensional table from a plain list `c_0, c_1, ...`.
    pub fn from_levels(values: Vec<C64>) -> Self {
        let trunc = values.len().saturating_sub(1);
        let indices = (0..values.len()).map(|k| vec![k]).collect();
        HermiteCoefficients { n: 1, trunc, indices, values, aliasing_warning: false }
    }

    pub fn position(&self, alpha: &[usize]) -> Option<usize> {
        let level: usize = alpha.iter().sum();
        if alpha.len() != self.n || level > self.trunc {
            return None;
        }
        self.indices.iter().position(|a| a.as_slice() == alpha)
    }

    pub fn get(&self, alpha: &[usize]) -> C64 {
        self.position(alpha).map(|p| self.values[p]).unwrap_or_default()
    }

    pub fn level(alpha: &[usize]) -> usize {
        alpha.iter().sum()
    }

    /// `||P_k f||^2` for `k = 0..=trunc`.
    pub fn level_norms_sq(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.trunc + 1];
        for (a, v) in self.indices.iter().zip(&self.values) {
            out[Self::level(a)] += v.norm_sqr();
        }
        out
    }

    pub fn norm_sq(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, v| a.max(v.norm()))
    }

    /// Multiply each coefficient by `mult(|alpha|)`.
    pub fn map_levels(&self, mult: impl Fn(usize) -> f64) -> Self {
        let mut out = self.clone();
        for (v, a) in out.values.iter_mut().zip(&self.indices) {
            *v *= mult(Self::level(a));
        }
        out
    }

    /// Zero every coefficient below `rel_floor * max |c|`.
    pub fn denoise(&self, rel_floor: f64) -> Self {
        let cut = rel_floor * self.max_abs();
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            if v.norm() <= cut {
                *v = C64::new(0.0, 0.0);
            }
        }
        out
    }

    /// Same coefficients with a different truncation (padding with zeros).
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut out = Self::from_fn(self.n, trunc, |a| self.get(a));
        out.aliasing_warning = self.aliasing_warning;
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let trunc = self.trunc.max(other.trunc);
        Self::from_fn(self.n, trunc, |a| self.get(a) - other.get(a))
    }

    /// Dense tensor `T[k_1, .., k_n]`, zero where `|k| > trunc`.
    fn dense(&self) -> ArrayD<C64> {
        let shape = vec![self.trunc + 1; self.n];
        let mut t = ArrayD::zeros(IxDyn(&shape));
        for (a, v) in self.indices.iter().zip(&self.values) {
            t[IxDyn(a)] = *v;
        }
        t
    }
}

fn analysis_matrix(axis: &crate::numerics::grid::Axis, trunc: usize) -> Array2<C64> {
    let mut m = Array2::zeros((trunc + 1, axis.len()));
    for (i, (&x, &w)) in axis.nodes.iter().zip(&axis.weights).enumerate() {
        for (k, h) in hermite_row(trunc, x).into_iter().enumerate() {
            m[[k, i]] = C64::new(w * h, 0.0);
        }
    }
    m
}

/// `c_alpha = (f, Phi_alpha)` for all `|alpha| <= trunc`.
pub fn hermite_coeffs(f: &SampledFunction, trunc: usize) -> HermiteCoefficients {
    let n = f.dim();
    let mut t = f.values.clone();
    for d in 0..n {
        t = apply_along_axis(&t, d, &analysis_matrix(&f.grid.axes[d], trunc));
    }
    let mut c = HermiteCoefficients::from_fn(n, trunc, |a| t[IxDyn(a)]);
    let min_nodes = f.grid.axes.iter().map(|a| a.len()).min().unwrap_or(0);
    c.aliasing_warning = trunc as f64 > 0.6 * min_nodes as f64;
    c
}

/// `sum_alpha c_alpha Phi_alpha` sampled on a real grid.
pub fn synthesize_on_grid(c: &HermiteCoefficients, grid: &GridSpec) -> SampledFunction {
    let mut t = c.dense();
    for d in 0..c.n {
        let axis = &grid.axes[d];
        let mut m = Array2::zeros((axis.len(), c.trunc + 1));
        for (i, &x) in axis.nodes.iter().enumerate() {
            for (k, h) in hermite_row(c.trunc, x).into_iter().enumerate() {
                m[[i, k]] = C64::new(h, 0.0);
            }
        }
        t = apply_along_axis(&t, d, &m);
    }
    SampledFunction { grid: grid.clone(), values: t }
}

/// Holomorphic extension: `sum_alpha c_alpha Phi_alpha(z)` on the tensor
/// product of per-coordinate complex point lists.
pub fn synthesize_on_axes(c: &HermiteCoefficients, axes: &[Vec<C64>]) -> ArrayD<C64> {
    let mut t = c.dense();
    for (d, pts) in axes.iter().enumerate().take(c.n) {
        let mut m = Array2::zeros((pts.len(), c.trunc + 1));
        for (i, &z) in pts.iter().enumerate() {
            for (k, h) in hermite_row_complex(c.trunc, z).into_iter().enumerate() {
                m[[i, k]] = h;
            }
        }
        t = apply_along_axis(&t, d, &m);
    }
    t
}

/// Holomorphic extension at a list of complex points in `C^n`.
pub fn hermite_synthesis(c: &HermiteCoefficients, points: &[Vec<C64>]) -> Vec<C64> {
    points
        .iter()
        .map(|z| {
            let rows: Vec<Vec<C64>> = z.iter().map(|&zj| hermite_row_complex(c.trunc, zj)).collect();
            c.indices
                .iter()
                .zip(&c.values)
                .map(|(a, v)| *v * a.iter().enumerate().map(|(j, &aj)| rows[j][aj]).product::<C64>())
                .sum()
        })
        .collect()
}

/// Keep only the level `k` coefficients.
pub fn projection_pk(c: &HermiteCoefficients, k: usize) -> Result<HermiteCoefficients> {
    if k > c.trunc {
        return invalid(format!("level {k} exceeds truncation {}", c.trunc));
    }
    Ok(c.map_levels(|l| if l == k { 1.0 } else { 0.0 }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hermite::hermite_fn;

    fn gauss_grid() -> GridSpec {
        GridSpec::gauss_hermite(1, 64, 1.0).unwrap()
    }

    #[test]
    fn coefficients_of_a_hermite_function() {
        let f = SampledFunction::from_real_fn(&gauss_grid(), |x| hermite_fn(2, x[0]));
        let c = hermite_coeffs(&f, 20);
        for (a, v) in c.indices.iter().zip(&c.values) {
            let expect = if a[0] == 2 { 1.0 } else { 0.0 };
            assert!((v - expect).norm() < 1e-10);
        }
        assert!(!c.aliasing_warning);
        assert!(hermite_coeffs(&f, 50).aliasing_warning);
    }

    #[test]
    fn zero_function_has_zero_coefficients() {
        let c = hermite_coeffs(&SampledFunction::zeros(&gauss_grid()), 10);
        assert!(c.values.iter().all(|v| v.norm() == 0.0));
    }

    #[test]
    fn gaussian_coefficients_follow_the_overlap_recurrence() {
        // (e^{-a x^2/2}, h_{2m}): ratio c_{2m+2}/c_{2m} = (1-a)/(1+a) sqrt((2m+1)/(2m+2))
        let a = 0.6;
        let g = GridSpec::uniform(1, -20.0, 20.0, 801).unwrap();
        let f = SampledFunction::from_real_fn(&g, |x| (-a * x[0] * x[0] / 2.0).exp());
        let c = hermite_coeffs(&f, 30);
        let c0 = (2.0 / (1.0 + a)).sqrt() * std::f64::consts::PI.powf(0.25);
        assert!((c.values[0].re - c0).abs() < 1e-12);
        let mut expect = c0;
        for m in 0..15 {
            let r = (1.0 - a) / (1.0 + a) * ((2 * m + 1) as f64 / (2 * m + 2) as f64).sqrt();
            expect *= r;
            let got = c.values[2 * m + 2].re;
            assert!((got - expect).abs() < 1e-12, "m = {m}: {got} vs {expect}");
            assert!(c.values[2 * m + 1].norm() < 1e-13);
        }
    }

    #[test]
    fn synthesis_round_trip() {
        let g = gauss_grid();
        let f = SampledFunction::from_real_fn(&g, |x| hermite_fn(1, x[0]) + 2.0 * hermite_fn(3, x[0]));
        let back = synthesize_on_grid(&hermite_coeffs(&f, 30), &g);
        assert!(back.sub(&f).unwrap().max_abs() < 1e-9);
        let c = HermiteCoefficients::unit(1, 4, &[0]);
        let v = hermite_synthesis(&c, &[vec![C64::new(0.0, 0.0)]]);
        assert!((v[0].re - std::f64::consts::PI.powf(-0.25)).abs() < 1e-15);
    }

    #[test]
    fn coefficient_round_trip_two_dimensions() {
        let g = GridSpec::gauss_hermite(2, 48, 1.0).unwrap();
        let c = HermiteCoefficients::from_fn(2, 12, |a| C64::new(1.0 / (1 + a[0] + 2 * a[1]) as f64, a[0] as f64 * 0.1));
        let back = hermite_coeffs(&synthesize_on_grid(&c, &g), 12);
        for (x, y) in back.values.iter().zip(&c.values) {
            assert!((x - y).norm() < 1e-9);
        }
    }

    #[test]
    fn projections_and_parseval() {
        let c = HermiteCoefficients::from_fn(2, 6, |a| C64::new((a[0] as f64 + 0.5).sin(), a[1] as f64));
        let p0 = projection_pk(&HermiteCoefficients::unit(1, 3, &[0]), 0).unwrap();
        assert_eq!(p0, HermiteCoefficients::unit(1, 3, &[0]));
        assert_eq!(projection_pk(&HermiteCoefficients::unit(1, 3, &[0]), 1).unwrap().norm_sq(), 0.0);
        let total: f64 = (0..=6).map(|k| projection_pk(&c, k).unwrap().norm_sq()).sum();
        assert!((total - c.norm_sq()).abs() < 1e-12);
        assert!(projection_pk(&c, 7).is_err());
    }

    #[test]
    fn imaginary_axis_growth_respects_the_entire_bound() {
        // coefficients e^{-(2k+1)s} give |f(iy)| <= C e^{coth(s) y^2 / 2}
        let s = 0.4;
        let c = HermiteCoefficients::from_levels((0..60).map(|k| C64::new((-(2.0 * k as f64 + 1.0) * s).exp(), 0.0)).collect());
        let mut worst = 0.0f64;
        for i in 0..40 {
            let y = 0.2 * i as f64;
            let v = hermite_synthesis(&c, &[vec![C64::new(0.0, y)]])[0].norm();
            worst = worst.max(v / (0.5 / s.tanh() * y * y).exp());
        }
        assert!(worst < 2.0, "worst ratio {worst}");
    }
}
