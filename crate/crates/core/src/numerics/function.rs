//! Sampled functions on `R^n` and on phase space `R^{2n}`.

use ndarray::{ArrayD, IxDyn};

use crate::error::{Error, Result};
use crate::numerics::grid::GridSpec;
use crate::numerics::tensor::apply_real_along_axis;
use crate::C64;

/// Anything that is a grid plus complex samples on it.
pub trait Sampled {
    fn grid(&self) -> &GridSpec;
    fn values(&self) -> &ArrayD<C64>;
}

fn check_shape(grid: &GridSpec, values: &ArrayD<C64>) -> Result<()> {
    if values.shape() != grid.shape().as_slice() {
        return Err(Error::GridMismatch(format!(
            "values have shape {:?}, grid has {:?}",
            values.shape(),
            grid.shape()
        )));
    }
    Ok(())
}

/// A function on `R^n` sampled on a tensor grid.
#[derive(Clone, Debug)]
pub struct SampledFunction {
    pub grid: GridSpec,
    pub values: ArrayD<C64>,
}

/// A function on `R^{2n}`; the first `n` axes are the `x` block and the
/// last `n` axes the `u` block.
#[derive(Clone, Debug)]
pub struct PhaseSpaceFunction {
    pub grid: GridSpec,
    pub values: ArrayD<C64>,
}

impl Sampled for SampledFunction {
    fn grid(&self) -> &GridSpec {
        &self.grid
    }
    fn values(&self) -> &ArrayD<C64> {
        &self.values
    }
}

impl Sampled for PhaseSpaceFunction {
    fn grid(&self) -> &GridSpec {
        &self.grid
    }
    fn values(&self) -> &ArrayD<C64> {
        &self.values
    }
}

impl SampledFunction {
    pub fn new(grid: GridSpec, values: ArrayD<C64>) -> Result<Self> {
        check_shape(&grid, &values)?;
        Ok(SampledFunction { grid, values })
    }

    pub fn zeros(grid: &GridSpec) -> Self {
        SampledFunction { grid: grid.clone(), values: ArrayD::zeros(IxDyn(&grid.shape())) }
    }

    pub fn from_fn(grid: &GridSpec, f: impl Fn(&[f64]) -> C64) -> Self {
        let values = ArrayD::from_shape_fn(IxDyn(&grid.shape()), |idx| f(&grid.point(&idx)));
        SampledFunction { grid: grid.clone(), values }
    }

    pub fn from_real_fn(grid: &GridSpec, f: impl Fn(&[f64]) -> f64) -> Self {
        Self::from_fn(grid, |x| C64::new(f(x), 0.0))
    }

    pub fn dim(&self) -> usize {
        self.grid.dim()
    }

    pub fn norm(&self) -> f64 {
        norm(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, v| a.max(v.norm()))
    }

    pub fn scaled(&self, c: C64) -> Self {
        SampledFunction { grid: self.grid.clone(), values: self.values.mapv(|v| v * c) }
    }

    pub fn add(&self, other: &SampledFunction) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(SampledFunction { grid: self.grid.clone(), values: &self.values + &other.values })
    }

    pub fn sub(&self, other: &SampledFunction) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(SampledFunction { grid: self.grid.clone(), values: &self.values - &other.values })
    }

    pub fn conj(&self) -> Self {
        SampledFunction { grid: self.grid.clone(), values: self.values.mapv(|v| v.conj()) }
    }

    /// Resample onto another tensor grid by per-axis interpolation.
    pub fn resample(&self, target: &GridSpec) -> Result<Self> {
        if target.dim() != self.dim() {
            return Err(Error::GridMismatch("resampling target has a different dimension".into()));
        }
        let mut values = self.values.clone();
        for d in 0..self.dim() {
            let e = self.grid.axes[d].interpolation_matrix(&target.axes[d].nodes);
            values = apply_real_along_axis(&values, d, &e);
        }
        Ok(SampledFunction { grid: target.clone(), values })
    }

    /// Values at arbitrary real points.
    pub fn eval_at(&self, points: &[Vec<f64>]) -> Vec<C64> {
        points
            .iter()
            .map(|p| {
                let mut v = self.values.clone();
                for d in (0..self.dim()).rev() {
                    let e = self.grid.axes[d].interpolation_matrix(&p[d..d + 1]);
                    v = apply_real_along_axis(&v, d, &e);
                }
                v.iter().next().copied().unwrap_or_default()
            })
            .collect()
    }
}

impl PhaseSpaceFunction {
    pub fn new(grid: GridSpec, values: ArrayD<C64>) -> Result<Self> {
        if !grid.dim().is_multiple_of(2) {
            return Err(Error::InvalidGrid("phase-space grid needs an even number of axes".into()));
        }
        check_shape(&grid, &values)?;
        Ok(PhaseSpaceFunction { grid, values })
    }

    pub fn zeros(grid: &GridSpec) -> Self {
        PhaseSpaceFunction { grid: grid.clone(), values: ArrayD::zeros(IxDyn(&grid.shape())) }
    }

    /// Build from `f(x, u)`.
    pub fn from_fn(grid: &GridSpec, f: impl Fn(&[f64], &[f64]) -> C64) -> Self {
        let n = grid.dim() / 2;
        let values = ArrayD::from_shape_fn(IxDyn(&grid.shape()), |idx| {
            let p = grid.point(&idx);
            f(&p[..n], &p[n..])
        });
        PhaseSpaceFunction { grid: grid.clone(), values }
    }

    pub fn n(&self) -> usize {
        self.grid.dim() / 2
    }

    pub fn x_grid(&self) -> GridSpec {
        self.grid.block(0..self.n())
    }

    pub fn u_grid(&self) -> GridSpec {
        self.grid.block(self.n()..2 * self.n())
    }

    pub fn norm(&self) -> f64 {
        norm(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |a, v| a.max(v.norm()))
    }

    pub fn scaled(&self, c: C64) -> Self {
        PhaseSpaceFunction { grid: self.grid.clone(), values: self.values.mapv(|v| v * c) }
    }

    pub fn add(&self, other: &PhaseSpaceFunction) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(PhaseSpaceFunction { grid: self.grid.clone(), values: &self.values + &other.values })
    }

    pub fn sub(&self, other: &PhaseSpaceFunction) -> Result<Self> {
        same_grid(&self.grid, &other.grid)?;
        Ok(PhaseSpaceFunction { grid: self.grid.clone(), values: &self.values - &other.values })
    }

    /// Resample onto another phase grid by per-axis interpolation.
    pub fn resample(&self, target: &GridSpec) -> Result<Self> {
        if target.dim() != self.grid.dim() {
            return Err(Error::GridMismatch("resampling target has a different dimension".into()));
        }
        let mut values = self.values.clone();
        for d in 0..target.dim() {
            let e = self.grid.axes[d].interpolation_matrix(&target.axes[d].nodes);
            values = apply_real_along_axis(&values, d, &e);
        }
        Ok(PhaseSpaceFunction { grid: target.clone(), values })
    }

    /// Largest pointwise difference.
    pub fn max_diff(&self, other: &PhaseSpaceFunction) -> Result<f64> {
        same_grid(&self.grid, &other.grid)?;
        Ok(self.values.iter().zip(other.values.iter()).fold(0.0f64, |a, (p, q)| a.max((p - q).norm())))
    }
}

pub(crate) fn same_grid(a: &GridSpec, b: &GridSpec) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch("functions live on different grids".into()));
    }
    Ok(())
}

/// `(f, g) = int f conj(g)` by the grid quadrature.
pub fn inner_product<T: Sampled>(f: &T, g: &T) -> Result<C64> {
    same_grid(f.grid(), g.grid())?;
    let w = f.grid().weight_tensor();
    let mut s = C64::new(0.0, 0.0);
    ndarray::Zip::from(&w).and(f.values()).and(g.values()).for_each(|&w, &a, &b| s += a * b.conj() * w);
    Ok(s)
}

pub fn norm<T: Sampled>(f: &T) -> f64 {
    let w = f.grid().weight_tensor();
    let mut s = 0.0;
    ndarray::Zip::from(&w).and(f.values()).for_each(|&w, a| s += w * a.norm_sqr());
    s.sqrt()
}

/// `f~(x) = f(-x)`.
pub fn reflect(f: &SampledFunction) -> Result<SampledFunction> {
    if !f.grid.is_symmetric() {
        return Err(Error::InvalidArgument("reflection needs a grid symmetric about 0".into()));
    }
    let mut values = f.values.clone();
    for d in 0..f.dim() {
        values.invert_axis(ndarray::Axis(d));
    }
    Ok(SampledFunction { grid: f.grid.clone(), values: values.as_standard_layout().into_owned() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::hermite::hermite_fn;

    fn grid() -> GridSpec {
        GridSpec::gauss_hermite(1, 64, 1.0).unwrap()
    }

    #[test]
    fn hermite_pairings() {
        let g = grid();
        let p0 = SampledFunction::from_real_fn(&g, |x| hermite_fn(0, x[0]));
        let p1 = SampledFunction::from_real_fn(&g, |x| hermite_fn(1, x[0]));
        assert!((inner_product(&p0, &p0).unwrap() - 1.0).norm() < 1e-10);
        assert!(inner_product(&p0, &p1).unwrap().norm() < 1e-10);
        let z = SampledFunction::zeros(&g);
        assert_eq!(inner_product(&z, &z).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn grid_mismatch_is_an_error() {
        let a = SampledFunction::zeros(&grid());
        let b = SampledFunction::zeros(&GridSpec::gauss_hermite(1, 32, 1.0).unwrap());
        assert!(matches!(inner_product(&a, &b), Err(Error::GridMismatch(_))));
    }

    #[test]
    fn reflection_parity_and_involution() {
        let g = grid();
        let p0 = SampledFunction::from_real_fn(&g, |x| hermite_fn(0, x[0]));
        let p1 = SampledFunction::from_real_fn(&g, |x| hermite_fn(1, x[0]));
        let r1 = reflect(&p1).unwrap();
        assert!(r1.add(&p1).unwrap().max_abs() < 1e-14);
        assert!(reflect(&p0).unwrap().sub(&p0).unwrap().max_abs() < 1e-14);
        let f = SampledFunction::from_fn(&g, |x| C64::new(x[0].sin(), (x[0] - 0.3).exp().min(5.0)));
        assert!(reflect(&reflect(&f).unwrap()).unwrap().sub(&f).unwrap().max_abs() == 0.0);
    }

    #[test]
    fn asymmetric_grid_rejected() {
        let g = GridSpec::uniform(1, -1.0, 2.0, 31).unwrap();
        assert!(reflect(&SampledFunction::zeros(&g)).is_err());
    }

    #[test]
    fn resample_between_grids() {
        let g = grid();
        let f = SampledFunction::from_real_fn(&g, |x| hermite_fn(4, x[0]));
        let target = GridSpec::uniform(1, -6.0, 6.0, 121).unwrap();
        let r = f.resample(&target).unwrap();
        for (i, &x) in target.axes[0].nodes.iter().enumerate() {
            assert!((r.values[[i]].re - hermite_fn(4, x)).abs() < 1e-12);
        }
        let v = f.eval_at(&[vec![0.37]]);
        assert!((v[0].re - hermite_fn(4, 0.37)).abs() < 1e-12);
    }
}
