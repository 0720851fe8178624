//! Fourier-type transforms as dense quadrature matrices.
//!
//! Convention: `f^(xi) = (2 pi)^{-n/2} int f(x) e^{-i x.xi} dx`, so that
//! Hermite functions are eigenfunctions with eigenvalues `(-i)^{|alpha|}`.
//! The transformed function lives on the same nodes as the input.

use std::f64::consts::PI;

use ndarray::Array2;

use crate::numerics::function::{PhaseSpaceFunction, SampledFunction};
use crate::numerics::grid::Axis;
use crate::numerics::tensor::{apply_along_axis, permute};
use crate::C64;

/// `M[j, i] = scale * w_i * e^{i * phase * y_j * x_i}`.
pub fn kernel_matrix(input: &Axis, out_nodes: &[f64], phase: f64, scale: f64) -> Array2<C64> {
    Array2::from_shape_fn((out_nodes.len(), input.len()), |(j, i)| {
        C64::from_polar(scale * input.weights[i], phase * out_nodes[j] * input.nodes[i])
    })
}

/// One-dimensional transform matrix onto the axis' own nodes; `sign = -1`
/// is the forward transform, `+1` the inverse.
pub fn fourier_matrix(axis: &Axis, sign: f64) -> Array2<C64> {
    kernel_matrix(axis, &axis.nodes, sign, (2.0 * PI).powf(-0.5))
}

fn transform_axes(values: &ndarray::ArrayD<C64>, axes: &[crate::numerics::grid::Axis], which: std::ops::Range<usize>, sign: f64) -> ndarray::ArrayD<C64> {
    let mut v = values.clone();
    for d in which {
        v = apply_along_axis(&v, d, &fourier_matrix(&axes[d], sign));
    }
    v
}

pub fn fourier_transform(f: &SampledFunction) -> SampledFunction {
    let values = transform_axes(&f.values, &f.grid.axes, 0..f.dim(), -1.0);
    SampledFunction { grid: f.grid.clone(), values }
}

pub fn inverse_fourier_transform(f: &SampledFunction) -> SampledFunction {
    let values = transform_axes(&f.values, &f.grid.axes, 0..f.dim(), 1.0);
    SampledFunction { grid: f.grid.clone(), values }
}

/// Fourier transform in the `x` block only.
pub fn partial_fourier_1(f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
    let n = f.n();
    PhaseSpaceFunction { grid: f.grid.clone(), values: transform_axes(&f.values, &f.grid.axes, 0..n, -1.0) }
}

/// Fourier transform in the `u` block only.
pub fn partial_fourier_2(f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
    let n = f.n();
    PhaseSpaceFunction { grid: f.grid.clone(), values: transform_axes(&f.values, &f.grid.axes, n..2 * n, -1.0) }
}

pub fn inverse_partial_fourier_1(f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
    let n = f.n();
    PhaseSpaceFunction { grid: f.grid.clone(), values: transform_axes(&f.values, &f.grid.axes, 0..n, 1.0) }
}

pub fn inverse_partial_fourier_2(f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
    let n = f.n();
    PhaseSpaceFunction { grid: f.grid.clone(), values: transform_axes(&f.values, &f.grid.axes, n..2 * n, 1.0) }
}

/// Full `2n`-dimensional Fourier transform of a phase-space function.
pub fn phase_fourier(f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
    PhaseSpaceFunction { grid: f.grid.clone(), values: transform_axes(&f.values, &f.grid.axes, 0..2 * f.n(), -1.0) }
}

/// Symplectic Fourier transform
/// `F_s F(x, u) = (4 pi)^{-n} int int F(y, v) e^{(i/2)(u.y - x.v)} dy dv`.
///
/// This normalization makes it an involution that fixes `e^{-(|x|^2+|u|^2)/4}`.
/// The output grid has the `x` and `u` blocks of the input swapped, which is
/// the same grid whenever both blocks use the same axes.
pub fn symplectic_fourier(f: &PhaseSpaceFunction) -> PhaseSpaceFunction {
    let n = f.n();
    let axes = &f.grid.axes;
    let mut v = f.values.clone();
    // y -> u along the x-block axes, v -> x along the u-block axes
    for d in 0..n {
        let out_nodes = &axes[n + d].nodes;
        v = apply_along_axis(&v, d, &kernel_matrix(&axes[d], out_nodes, 0.5, 1.0 / (4.0 * PI)));
    }
    for d in n..2 * n {
        let out_nodes = &axes[d - n].nodes;
        v = apply_along_axis(&v, d, &kernel_matrix(&axes[d], out_nodes, -0.5, 1.0));
    }
    // axes now read (u, x); swap the blocks back to (x, u)
    let perm: Vec<usize> = (n..2 * n).chain(0..n).collect();
    let values = permute(&v, &perm);
    let mut out_axes = axes[n..].to_vec();
    out_axes.extend(axes[..n].iter().cloned());
    let grid = crate::numerics::grid::GridSpec { axes: out_axes };
    PhaseSpaceFunction { grid, values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::function::inner_product;
    use crate::numerics::grid::GridSpec;
    use crate::special::hermite::{hermite_eval, hermite_fn, multi_indices};

    #[test]
    fn gaussian_is_fixed() {
        let g = GridSpec::gauss_hermite(1, 64, 1.0).unwrap();
        let f = SampledFunction::from_real_fn(&g, |x| (-x[0] * x[0] / 2.0).exp());
        assert!(fourier_transform(&f).sub(&f).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn hermite_eigenvalues_up_to_degree_20() {
        for (n, m) in [(1usize, 64usize), (2, 64)] {
            let g = GridSpec::gauss_hermite(n, m, 1.0).unwrap();
            for alpha in multi_indices(n, 20) {
                if n == 2 && alpha.iter().sum::<usize>() % 5 != 0 {
                    continue;
                }
                let f = SampledFunction::from_real_fn(&g, |x| hermite_eval(&alpha, x));
                let k = alpha.iter().sum::<usize>();
                let lam = C64::new(0.0, -1.0).powu(k as u32);
                let err = fourier_transform(&f).sub(&f.scaled(lam)).unwrap().max_abs();
                assert!(err < 1e-8, "alpha = {alpha:?}, err = {err}");
            }
        }
    }

    #[test]
    fn partial_transforms_compose_to_full() {
        let g = GridSpec::gauss_hermite(2, 48, 1.0).unwrap();
        let f = PhaseSpaceFunction::from_fn(&g, |x, u| {
            C64::new(hermite_fn(2, x[0]) * hermite_fn(1, u[0]), hermite_fn(0, x[0]) * hermite_fn(3, u[0]))
        });
        let a = partial_fourier_2(&partial_fourier_1(&f));
        let b = phase_fourier(&f);
        assert!(a.max_diff(&b).unwrap() < 1e-12);
        let twice = partial_fourier_1(&partial_fourier_1(&f));
        let reflected = PhaseSpaceFunction::from_fn(&g, |x, u| {
            C64::new(hermite_fn(2, -x[0]) * hermite_fn(1, u[0]), hermite_fn(0, -x[0]) * hermite_fn(3, u[0]))
        });
        assert!(twice.max_diff(&reflected).unwrap() < 1e-10);
        let gauss = PhaseSpaceFunction::from_fn(&g, |x, u| C64::new((-(x[0] * x[0] + u[0] * u[0]) / 2.0).exp(), 0.0));
        assert!(partial_fourier_1(&gauss).max_diff(&gauss).unwrap() < 1e-12);
    }

    #[test]
    fn symplectic_transform_fixes_quarter_gaussian_and_is_involutive() {
        let g = GridSpec::gauss_hermite(2, 64, 1.0).unwrap();
        let f = PhaseSpaceFunction::from_fn(&g, |x, u| C64::new((-(x[0] * x[0] + u[0] * u[0]) / 4.0).exp(), 0.0));
        let s = symplectic_fourier(&f);
        assert!(s.max_diff(&f).unwrap() < 1e-10);
        let h = PhaseSpaceFunction::from_fn(&g, |x, u| {
            C64::new(x[0], u[0] * u[0] - 0.5 * x[0] * u[0]) * (-(x[0] * x[0] + u[0] * u[0]) / 4.0).exp()
        });
        assert!(symplectic_fourier(&symplectic_fourier(&h)).max_diff(&h).unwrap() < 1e-8);
        let z = PhaseSpaceFunction::zeros(&g);
        assert_eq!(symplectic_fourier(&z).max_abs(), 0.0);
    }

    #[test]
    fn parseval_on_hermite_span() {
        let g = GridSpec::gauss_hermite(1, 128, 1.0).unwrap();
        let f = SampledFunction::from_fn(&g, |x| {
            let r = crate::special::hermite::hermite_row(40, x[0]);
            (0..=40).map(|k| C64::new(r[k] / (k + 1) as f64, r[k] * ((k % 3) as f64 - 1.0))).sum()
        });
        let fh = fourier_transform(&f);
        let a = inner_product(&f, &f).unwrap().re;
        let b = inner_product(&fh, &fh).unwrap().re;
        assert!((a - b).abs() < 1e-8 * a);
    }
}
