//! Fourier-Wigner transform and special Hermite functions.
//!
//! `V(phi1, phi2)(x, u) = (2 pi)^{-n/2} int e^{i(x.xi + x.u/2)} phi1(xi + u) conj(phi2(xi)) dxi`,
//! computed through its partial Fourier transform
//! `F_1 V(x, u) = phi1(x + u/2) conj(phi2(x - u/2))`.

use std::f64::consts::PI;

use ndarray::{Array2, IxDyn};

use crate::error::{Error, Result};
use crate::numerics::fourier::{kernel_matrix, partial_fourier_1};
use crate::numerics::function::{same_grid, PhaseSpaceFunction, SampledFunction};
use crate::numerics::grid::GridSpec;
use crate::numerics::tensor::{apply_along_axis, apply_real_along_axis};
use crate::special::hermite::{hermite_row, multi_indices, MultiIndex};
use crate::wigner::pairs::{merge_pairs, pair_points, split_pairs};
use crate::C64;

/// Fourier-Wigner transform sampled on `phase` (x block then u block).
///
/// The `xi` integral runs over the grid of the inputs.
pub fn wigner_transform_on(phi1: &SampledFunction, phi2: &SampledFunction, phase: &GridSpec) -> Result<PhaseSpaceFunction> {
    same_grid(&phi1.grid, &phi2.grid)?;
    let n = phi1.dim();
    if phase.dim() != 2 * n {
        return Err(Error::GridMismatch(format!("phase grid has {} axes, expected {}", phase.dim(), 2 * n)));
    }
    let g = &phi1.grid;
    let mut a1 = phi1.values.clone();
    let mut a2 = phi2.values.mapv(|v| v.conj());
    for j in 0..n {
        let eta = &g.axes[j].nodes;
        let u = &phase.axes[n + j].nodes;
        a1 = apply_real_along_axis(&a1, j, &g.axes[j].interpolation_matrix(&pair_points(eta, u, 1.0, 0.5)));
        a2 = apply_real_along_axis(&a2, j, &g.axes[j].interpolation_matrix(&pair_points(eta, u, 1.0, -0.5)));
    }
    let prod = a1 * a2;
    let u_dims: Vec<usize> = (0..n).map(|j| phase.axes[n + j].len()).collect();
    let mut v = split_pairs(prod, &g.shape(), &u_dims);
    for j in 0..n {
        v = apply_along_axis(&v, j, &kernel_matrix(&g.axes[j], &phase.axes[j].nodes, 1.0, (2.0 * PI).powf(-0.5)));
    }
    PhaseSpaceFunction::new(phase.clone(), v)
}

/// Fourier-Wigner transform on the phase grid made of two copies of the
/// input grid.
pub fn wigner_transform(phi1: &SampledFunction, phi2: &SampledFunction) -> Result<PhaseSpaceFunction> {
    let phase = phi1.grid.concat(&phi1.grid);
    wigner_transform_on(phi1, phi2, &phase)
}

/// Integration grid used for special Hermite functions of total degree `deg`.
fn hermite_source_grid(n: usize, deg: usize) -> GridSpec {
    let m = if n == 1 { 64.max(2 * deg + 24) } else { 48.max(2 * deg + 24) };
    GridSpec::gauss_hermite(n, m, 1.0).expect("valid order")
}

/// `Phi_{alpha, beta} = V(Phi_alpha, Phi_beta)` on a phase grid.
pub fn special_hermite(alpha: &[usize], beta: &[usize], phase: &GridSpec) -> Result<PhaseSpaceFunction> {
    let n = alpha.len();
    let deg = alpha.iter().chain(beta).copied().max().unwrap_or(0);
    let g = hermite_source_grid(n, deg);
    let a = SampledFunction::from_real_fn(&g, |x| crate::special::hermite::hermite_eval(alpha, x));
    let b = SampledFunction::from_real_fn(&g, |x| crate::special::hermite::hermite_eval(beta, x));
    wigner_transform_on(&a, &b, phase)
}

/// Table `P[a, b] = (F, Phi_{alpha_a, beta_b})` over `multi_indices(n, trunc)`.
///
/// Uses `(F, Phi_{alpha,beta}) = (F_1 F, Phi_alpha(x+u/2) Phi_beta(x-u/2))`.
pub fn special_hermite_pairings(f: &PhaseSpaceFunction, trunc: usize) -> (Vec<MultiIndex>, Array2<C64>) {
    let n = f.n();
    let g1 = partial_fourier_1(f);
    let w = f.grid.weight_tensor();
    let weighted = ndarray::Zip::from(&g1.values).and(&w).map_collect(|v, w| v * *w);
    let mut t = merge_pairs(&weighted, n);
    let k1 = trunc + 1;
    for j in 0..n {
        let xs = &f.grid.axes[j].nodes;
        let us = &f.grid.axes[n + j].nodes;
        let plus: Vec<Vec<f64>> = pair_points(xs, us, 1.0, 0.5).into_iter().map(|p| hermite_row(trunc, p)).collect();
        let minus: Vec<Vec<f64>> = pair_points(xs, us, 1.0, -0.5).into_iter().map(|p| hermite_row(trunc, p)).collect();
        let mut c = Array2::<C64>::zeros((k1 * k1, plus.len()));
        for (pq, (hp, hm)) in plus.iter().zip(&minus).enumerate() {
            for k in 0..k1 {
                for l in 0..k1 {
                    c[[k * k1 + l, pq]] = C64::new(hp[k] * hm[l], 0.0);
                }
            }
        }
        t = apply_along_axis(&t, j, &c);
    }
    let t = split_pairs(t, &vec![k1; n], &vec![k1; n]);
    let idx = multi_indices(n, trunc);
    let mut p = Array2::zeros((idx.len(), idx.len()));
    for (a, alpha) in idx.iter().enumerate() {
        for (b, beta) in idx.iter().enumerate() {
            let pos: Vec<usize> = alpha.iter().chain(beta).copied().collect();
            p[[a, b]] = t[IxDyn(&pos)];
        }
    }
    (idx, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::function::inner_product;
    use crate::special::hermite::hermite_fn;

    fn grid1() -> GridSpec {
        GridSpec::gauss_hermite(1, 64, 1.0).unwrap()
    }

    #[test]
    fn ground_state_closed_form() {
        let phase = GridSpec::gauss_hermite(2, 48, 1.0).unwrap();
        let v = special_hermite(&[0], &[0], &phase).unwrap();
        let exact = PhaseSpaceFunction::from_fn(&phase, |x, u| C64::new((2.0 * PI).powf(-0.5) * (-(x[0] * x[0] + u[0] * u[0]) / 4.0).exp(), 0.0));
        assert!(v.max_diff(&exact).unwrap() < 1e-12);
    }

    #[test]
    fn partial_transform_is_the_product() {
        let g = grid1();
        let p = SampledFunction::from_fn(&g, |x| C64::new(hermite_fn(1, x[0]), 0.5 * hermite_fn(2, x[0])));
        let q = SampledFunction::from_fn(&g, |x| C64::new(hermite_fn(0, x[0]), -hermite_fn(3, x[0])));
        let v = wigner_transform(&p, &q).unwrap();
        let f1 = partial_fourier_1(&v);
        let pf = |x: f64| C64::new(hermite_fn(1, x), 0.5 * hermite_fn(2, x));
        let qf = |x: f64| C64::new(hermite_fn(0, x), -hermite_fn(3, x));
        let expect = PhaseSpaceFunction::from_fn(&v.grid, |x, u| pf(x[0] + u[0] / 2.0) * qf(x[0] - u[0] / 2.0).conj());
        assert!(f1.max_diff(&expect).unwrap() < 1e-8);
    }

    #[test]
    fn moyal_on_low_hermite_functions() {
        let g = grid1();
        let phase = g.concat(&g);
        let fs: Vec<SampledFunction> = (0..4).map(|k| SampledFunction::from_real_fn(&g, |x| hermite_fn(k, x[0]))).collect();
        let v01 = wigner_transform_on(&fs[0], &fs[1], &phase).unwrap();
        let v23 = wigner_transform_on(&fs[2], &fs[3], &phase).unwrap();
        let v11 = wigner_transform_on(&fs[1], &fs[1], &phase).unwrap();
        assert!(inner_product(&v01, &v23).unwrap().norm() < 1e-10);
        assert!((inner_product(&v11, &v11).unwrap() - 1.0).norm() < 1e-10);
    }

    #[test]
    fn pairings_pick_out_special_hermite_coefficients() {
        let phase = GridSpec::gauss_hermite(2, 64, 1.0).unwrap();
        let f = special_hermite(&[2], &[1], &phase).unwrap();
        let (idx, p) = special_hermite_pairings(&f, 4);
        for (a, al) in idx.iter().enumerate() {
            for (b, be) in idx.iter().enumerate() {
                let expect = if al[0] == 2 && be[0] == 1 { 1.0 } else { 0.0 };
                assert!((p[[a, b]] - expect).norm() < 1e-10, "{al:?} {be:?} {}", p[[a, b]]);
            }
        }
    }
}
