//! Weyl transform `W(F) = int F(x, u) pi(x, u) dx du` in spectral and
//! integral-kernel form.

use std::f64::consts::PI;
use std::io::Write;

use nalgebra::DMatrix;
use ndarray::{Array1, Array2, IxDyn};

use crate::error::{Error, Result};
use crate::numerics::fourier::partial_fourier_1;
use crate::numerics::function::{PhaseSpaceFunction, SampledFunction};
use crate::numerics::grid::GridSpec;
use crate::numerics::tensor::{apply_real_along_axis, reshape};
use crate::special::coeffs::HermiteCoefficients;
use crate::special::hermite::{hermite_eval, multi_indices, MultiIndex};
use crate::wigner::pairs::{contract_diag, pair_points, split_pairs};
use crate::wigner::wigner::special_hermite_pairings;
use crate::C64;

/// Truncated matrix `M[a, b] = (W(F) Phi_beta, Phi_alpha)` over `|alpha|, |beta| <= trunc`.
#[derive(Clone, Debug)]
pub struct WeylOperatorMatrix {
    pub n: usize,
    pub trunc: usize,
    pub indices: Vec<MultiIndex>,
    pub matrix: Array2<C64>,
}

impl WeylOperatorMatrix {
    pub fn zeros(n: usize, trunc: usize) -> Self {
        let indices = multi_indices(n, trunc);
        let k = indices.len();
        WeylOperatorMatrix { n, trunc, indices, matrix: Array2::zeros((k, k)) }
    }

    /// Diagonal operator acting by `mult(|alpha|)`.
    pub fn from_levels(n: usize, trunc: usize, mult: impl Fn(usize) -> C64) -> Self {
        let mut m = Self::zeros(n, trunc);
        for (a, alpha) in m.indices.iter().enumerate() {
            m.matrix[[a, a]] = mult(alpha.iter().sum());
        }
        m
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n || self.trunc != other.trunc {
            return Err(Error::InvalidArgument(format!(
                "matrix shapes differ: (n={}, N={}) vs (n={}, N={})",
                self.n, self.trunc, other.n, other.trunc
            )));
        }
        Ok(())
    }

    pub fn max_diff(&self, other: &Self) -> Result<f64> {
        self.check(other)?;
        Ok(self.matrix.iter().zip(&other.matrix).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, c: C64) -> Self {
        WeylOperatorMatrix { matrix: self.matrix.mapv(|v| v * c), ..self.clone() }
    }

    /// Product of the truncated matrices.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(WeylOperatorMatrix { matrix: self.matrix.dot(&other.matrix), ..self.clone() })
    }

    pub fn apply(&self, c: &HermiteCoefficients) -> Result<HermiteCoefficients> {
        if c.n != self.n || c.trunc != self.trunc {
            return Err(Error::InvalidArgument("coefficient table does not match the matrix".into()));
        }
        let v = Array1::from(c.values.clone());
        let out = self.matrix.dot(&v);
        Ok(HermiteCoefficients { values: out.to_vec(), aliasing_warning: c.aliasing_warning, ..c.clone() })
    }

    /// Largest singular value of the truncated matrix.
    pub fn op_norm(&self) -> f64 {
        let k = self.matrix.nrows();
        if k == 0 {
            return 0.0;
        }
        let m = DMatrix::from_fn(k, k, |i, j| self.matrix[[i, j]]);
        m.singular_values().iter().copied().fold(0.0, f64::max)
    }

    /// Largest modulus of an entry with `|alpha| != |beta|`.
    pub fn off_level_max(&self) -> f64 {
        let mut out: f64 = 0.0;
        for (a, al) in self.indices.iter().enumerate() {
            for (b, be) in self.indices.iter().enumerate() {
                if al.iter().sum::<usize>() != be.iter().sum::<usize>() {
                    out = out.max(self.matrix[[a, b]].norm());
                }
            }
        }
        out
    }

    /// CSV rows `alpha..., beta..., re, im`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let mut header: Vec<String> = (1..=self.n).map(|j| format!("alpha{j}")).collect();
        header.extend((1..=self.n).map(|j| format!("beta{j}")));
        header.push("re".into());
        header.push("im".into());
        wr.write_record(&header).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        for (a, al) in self.indices.iter().enumerate() {
            for (b, be) in self.indices.iter().enumerate() {
                let v = self.matrix[[a, b]];
                let mut row: Vec<String> = al.iter().chain(be).map(|k| k.to_string()).collect();
                row.push(format!("{:e}", v.re));
                row.push(format!("{:e}", v.im));
                wr.write_record(&row).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            }
        }
        wr.flush()?;
        Ok(())
    }
}

/// Weyl matrix from special Hermite coefficients:
/// `M[a, b] = (2 pi)^{n/2} (-1)^{|alpha|+|beta|} (F, Phi_{alpha, beta})`.
pub fn weyl_matrix_spectral(f: &PhaseSpaceFunction, trunc: usize) -> WeylOperatorMatrix {
    let n = f.n();
    let (indices, p) = special_hermite_pairings(f, trunc);
    let scale = (2.0 * PI).powf(n as f64 / 2.0);
    let mut matrix = p;
    for (a, al) in indices.iter().enumerate() {
        for (b, be) in indices.iter().enumerate() {
            let sign = if (al.iter().sum::<usize>() + be.iter().sum::<usize>()) % 2 == 0 { 1.0 } else { -1.0 };
            matrix[[a, b]] *= sign * scale;
        }
    }
    WeylOperatorMatrix { n, trunc, indices, matrix }
}

/// Discretized integral kernel of `W(F)`:
/// `(W(F) phi)(xi) = (2 pi)^{n/2} int F_1 F((-u - xi)/2, u - xi) phi(u) du`.
#[derive(Clone, Debug)]
pub struct WeylKernel {
    pub input: GridSpec,
    pub output: GridSpec,
    /// `K[xi, u]` without quadrature weights; rows and columns are row-major
    /// flattenings of the output and input grids.
    pub kernel: Array2<C64>,
}

impl WeylKernel {
    pub fn build(f: &PhaseSpaceFunction, input: &GridSpec, output: &GridSpec) -> Result<Self> {
        let n = f.n();
        if input.dim() != n || output.dim() != n {
            return Err(Error::GridMismatch(format!("Weyl kernel needs {n}-dimensional grids")));
        }
        let g1 = partial_fourier_1(f);
        let mut t = g1.values;
        for j in 0..n {
            let xi = &output.axes[j].nodes;
            let u = &input.axes[j].nodes;
            let ex = f.grid.axes[j].interpolation_matrix(&pair_points(xi, u, -0.5, -0.5));
            let eu = f.grid.axes[n + j].interpolation_matrix(&pair_points(xi, u, -1.0, 1.0));
            t = apply_real_along_axis(&t, j, &ex);
            // earlier u axes are already gone, so u_j sits right after the n pair axes
            t = contract_diag(&t, j, n, &eu);
        }
        let t = split_pairs(t, &output.shape(), &input.shape());
        let t = reshape(t, &[output.len(), input.len()]);
        let scale = (2.0 * PI).powf(n as f64 / 2.0);
        let kernel = t.into_dimensionality::<ndarray::Ix2>().expect("rank two").mapv(|v| v * scale);
        Ok(WeylKernel { input: input.clone(), output: output.clone(), kernel })
    }

    pub fn apply(&self, phi: &SampledFunction) -> Result<SampledFunction> {
        crate::numerics::function::same_grid(&self.input, &phi.grid)?;
        let w = self.input.weight_tensor();
        let v: Array1<C64> = phi.values.iter().zip(w.iter()).map(|(a, b)| a * *b).collect();
        let out = self.kernel.dot(&v);
        let values = out.into_shape_with_order(IxDyn(&self.output.shape())).expect("output shape");
        SampledFunction::new(self.output.clone(), values)
    }

    /// `(W(F) Phi_beta, Phi_alpha)` by quadrature on both grids.
    pub fn matrix(&self, trunc: usize) -> WeylOperatorMatrix {
        let n = self.input.dim();
        let indices = multi_indices(n, trunc);
        let basis = |g: &GridSpec, weighted: bool| {
            let w = g.weight_tensor();
            let pts: Vec<(Vec<f64>, f64)> = w.indexed_iter().map(|(i, &wi)| (g.point(&i), wi)).collect();
            Array2::from_shape_fn((pts.len(), indices.len()), |(p, a)| {
                let h = hermite_eval(&indices[a], &pts[p].0);
                C64::new(if weighted { h * pts[p].1 } else { h }, 0.0)
            })
        };
        let hin = basis(&self.input, true);
        let hout = basis(&self.output, true);
        let matrix = hout.t().dot(&self.kernel.dot(&hin));
        WeylOperatorMatrix { n, trunc, indices, matrix }
    }
}

/// Applies `W(F)` to `phi` by quadrature, output on the grid of `phi`.
pub fn weyl_apply_kernel(f: &PhaseSpaceFunction, phi: &SampledFunction) -> Result<SampledFunction> {
    WeylKernel::build(f, &phi.grid, &phi.grid)?.apply(phi)
}

/// Weyl matrix through the integral kernel on `grid`.
pub fn weyl_matrix_kernel(f: &PhaseSpaceFunction, grid: &GridSpec, trunc: usize) -> Result<WeylOperatorMatrix> {
    Ok(WeylKernel::build(f, grid, grid)?.matrix(trunc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::function::{inner_product, reflect};
    use crate::special::hermite::hermite_fn;
    use crate::wigner::wigner::{special_hermite, wigner_transform_on};

    fn phase1() -> GridSpec {
        GridSpec::gauss_hermite(2, 64, 1.0).unwrap()
    }

    fn combo(g: &GridSpec, c: &[(f64, f64)]) -> SampledFunction {
        SampledFunction::from_fn(g, |x| c.iter().enumerate().map(|(k, &(a, b))| C64::new(a, b) * hermite_fn(k, x[0])).sum())
    }

    #[test]
    fn rank_one_rule() {
        let g = GridSpec::gauss_hermite(1, 64, 1.0).unwrap();
        let p1 = combo(&g, &[(0.3, 0.1), (-0.5, 0.2), (0.7, 0.0), (0.0, 0.4)]);
        let p2 = combo(&g, &[(1.0, 0.0), (0.2, -0.3), (0.0, 0.0), (-0.1, 0.6)]);
        let p3 = combo(&g, &[(0.0, 0.5), (0.8, 0.0), (0.1, 0.1), (0.2, 0.0)]);
        let f = wigner_transform_on(&p1, &p2, &phase1()).unwrap();
        let lhs = weyl_apply_kernel(&f, &p3).unwrap();
        let pair = inner_product(&p3, &reflect(&p2).unwrap()).unwrap();
        let rhs = reflect(&p1).unwrap().scaled(pair * (2.0 * PI).sqrt());
        assert!(lhs.sub(&rhs).unwrap().norm() < 1e-7 * rhs.norm());
    }

    #[test]
    fn kernel_and_spectral_agree() {
        let phase = phase1();
        let mut f = PhaseSpaceFunction::zeros(&phase);
        let terms = [([1usize], [0usize], C64::new(0.4, 0.2)), ([3], [2], C64::new(-0.3, 0.0)), ([0], [5], C64::new(0.1, -0.6))];
        for (a, b, c) in terms {
            f = f.add(&special_hermite(&a, &b, &phase).unwrap().scaled(c)).unwrap();
        }
        let g = GridSpec::gauss_hermite(1, 64, 1.0).unwrap();
        let ms = weyl_matrix_spectral(&f, 8);
        let mk = weyl_matrix_kernel(&f, &g, 8).unwrap();
        assert!(ms.max_diff(&mk).unwrap() < 1e-6, "{}", ms.max_diff(&mk).unwrap());
        let expect = (2.0 * PI).sqrt() * 0.4;
        assert!((ms.matrix[[1, 0]] - C64::new(-expect, -(2.0 * PI).sqrt() * 0.2)).norm() < 1e-9);
    }

    #[test]
    fn ground_state_gaussian_is_a_projection() {
        let phase = phase1();
        let f = PhaseSpaceFunction::from_fn(&phase, |x, u| C64::new((-(x[0] * x[0] + u[0] * u[0]) / 4.0).exp(), 0.0));
        let m = weyl_matrix_spectral(&f, 6);
        let mut expect = WeylOperatorMatrix::zeros(1, 6);
        expect.matrix[[0, 0]] = C64::new(2.0 * PI, 0.0);
        assert!(m.max_diff(&expect).unwrap() < 1e-9);
        assert!((m.op_norm() - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn csv_has_one_row_per_entry() {
        let m = WeylOperatorMatrix::from_levels(2, 1, |k| C64::new(k as f64, 0.0));
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 1 + 9);
        assert!(s.starts_with("alpha1,alpha2,beta1,beta2,re,im"));
    }
}
