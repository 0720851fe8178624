//! One-dimensional quadrature axes and their tensor products.
//!
//! Weights are always the compensated ones: a plain weighted sum
//! `sum w_i g(x_i)` approximates `int g(x) dx`.

use nalgebra::{DMatrix, SymmetricEigen};
use ndarray::{Array2, ArrayD, IxDyn};

use crate::error::{invalid, Error, Result};
use crate::special::hermite::hermite_row;

#[derive(Clone, Debug, PartialEq)]
pub enum AxisKind {
    /// Gauss-Hermite nodes for the weight `e^{-(x/scale)^2}`.
    GaussHermite { scale: f64 },
    /// Equispaced nodes with trapezoid weights.
    Uniform,
    /// Arbitrary increasing nodes with trapezoid weights.
    Nodes,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub kind: AxisKind,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Gauss-Hermite nodes and compensated weights `w_i e^{x_i^2}`.
///
/// Golub-Welsch on the Jacobi matrix, then one Newton pass on `h_m`.
pub fn gauss_hermite_nodes(m: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return invalid("Gauss-Hermite order must be at least 1");
    }
    let jac = DMatrix::from_fn(m, m, |i, j| {
        if i + 1 == j || j + 1 == i {
            ((i.max(j)) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|a, b| a.total_cmp(b));
    let mf = m as f64;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let row = hermite_row(m, *x);
            let deriv = (2.0 * mf).sqrt() * row[m - 1] - *x * row[m];
            if deriv == 0.0 {
                break;
            }
            let step = row[m] / deriv;
            *x -= step;
            if step.abs() < 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
    }
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let r = 0.5 * (nodes[j] - nodes[i]);
        nodes[i] = -r;
        nodes[j] = r;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let h = hermite_row(m - 1, x)[m - 1];
            1.0 / (mf * h * h)
        })
        .collect();
    Ok((nodes, weights))
}

fn trapezoid(nodes: &[f64]) -> Vec<f64> {
    let m = nodes.len();
    if m == 1 {
        return vec![1.0];
    }
    (0..m)
        .map(|i| {
            let left = if i > 0 { nodes[i] - nodes[i - 1] } else { 0.0 };
            let right = if i + 1 < m { nodes[i + 1] - nodes[i] } else { 0.0 };
            0.5 * (left + right)
        })
        .collect()
}

impl Axis {
    pub fn gauss_hermite(m: usize, scale: f64) -> Result<Self> {
        if !(scale > 0.0 && scale.is_finite()) {
            return invalid(format!("Gauss-Hermite scale must be positive, got {scale}"));
        }
        let (g, w) = gauss_hermite_nodes(m)?;
        Ok(Axis {
            kind: AxisKind::GaussHermite { scale },
            nodes: g.iter().map(|x| x * scale).collect(),
            weights: w.iter().map(|x| x * scale).collect(),
        })
    }

    pub fn uniform(lo: f64, hi: f64, m: usize) -> Result<Self> {
        if m < 2 || !(hi > lo) {
            return invalid(format!("uniform axis needs m >= 2 and lo < hi (m = {m}, [{lo}, {hi}])"));
        }
        let h = (hi - lo) / (m - 1) as f64;
        let nodes: Vec<f64> = (0..m).map(|i| lo + h * i as f64).collect();
        let weights = trapezoid(&nodes);
        Ok(Axis { kind: AxisKind::Uniform, nodes, weights })
    }

    /// Axis from a bare increasing node list; detected as uniform when the
    /// spacing is constant to 1e-9 relative.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidGrid("empty axis".into()));
        }
        if nodes.windows(2).any(|w| !(w[1] > w[0])) || nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidGrid("axis nodes must be finite and strictly increasing".into()));
        }
        let weights = trapezoid(&nodes);
        let kind = if nodes.len() > 1 {
            let h = (nodes[nodes.len() - 1] - nodes[0]) / (nodes.len() - 1) as f64;
            if nodes.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs()) {
                AxisKind::Uniform
            } else {
                AxisKind::Nodes
            }
        } else {
            AxisKind::Nodes
        };
        Ok(Axis { kind, nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes.len() != self.weights.len() || self.nodes.is_empty() {
            return Err(Error::InvalidGrid("node and weight counts differ".into()));
        }
        if self.nodes.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid("axis nodes not strictly increasing".into()));
        }
        if self.weights.iter().any(|w| !(*w > 0.0)) {
            return Err(Error::InvalidGrid("quadrature weights must be positive".into()));
        }
        Ok(())
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.nodes.len();
        let span = self.nodes.iter().fold(0.0f64, |a, x| a.max(x.abs())).max(1.0);
        (0..m).all(|i| (self.nodes[i] + self.nodes[m - 1 - i]).abs() <= 1e-10 * span)
    }

    pub fn max_abs(&self) -> f64 {
        self.nodes.iter().fold(0.0f64, |a, x| a.max(x.abs()))
    }

    /// Row `p` holds the coefficients that reconstruct `f(points[p])` from
    /// the samples `f(x_i)`.
    ///
    /// Gauss-Hermite axes use the Hermite cardinal functions (exact on the
    /// span of the first `m` scaled Hermite functions, Gaussian decay outside
    /// the node range). Other axes use Floater-Hormann rational
    /// interpolation of order 3 and return zero outside the node range.
    pub fn interpolation_matrix(&self, points: &[f64]) -> Array2<f64> {
        let m = self.len();
        match self.kind {
            AxisKind::GaussHermite { scale } => {
                let kmax = m - 1;
                let norm = 1.0 / scale.sqrt();
                let mut analysis = Array2::<f64>::zeros((m, m));
                for (i, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
                    let row = hermite_row(kmax, x / scale);
                    for k in 0..m {
                        analysis[[k, i]] = w * row[k] * norm;
                    }
                }
                let mut basis = Array2::<f64>::zeros((points.len(), m));
                for (p, &x) in points.iter().enumerate() {
                    let row = hermite_row(kmax, x / scale);
                    for k in 0..m {
                        basis[[p, k]] = row[k] * norm;
                    }
                }
                basis.dot(&analysis)
            }
            _ => {
                let bw = floater_hormann_weights(&self.nodes, 3.min(m.saturating_sub(1)));
                let mut out = Array2::<f64>::zeros((points.len(), m));
                let (lo, hi) = (self.nodes[0], self.nodes[m - 1]);
                for (p, &x) in points.iter().enumerate() {
                    if x < lo - 1e-12 || x > hi + 1e-12 {
                        continue;
                    }
                    if let Some(i) = self.nodes.iter().position(|&xi| (x - xi).abs() <= 1e-13 * xi.abs().max(1.0)) {
                        out[[p, i]] = 1.0;
                        continue;
                    }
                    let terms: Vec<f64> = self.nodes.iter().zip(&bw).map(|(&xi, &b)| b / (x - xi)).collect();
                    let denom: f64 = terms.iter().sum();
                    for (i, t) in terms.iter().enumerate() {
                        out[[p, i]] = t / denom;
                    }
                }
                out
            }
        }
    }
}

fn floater_hormann_weights(x: &[f64], d: usize) -> Vec<f64> {
    let m = x.len();
    let mut w = vec![0.0; m];
    if m == 1 {
        w[0] = 1.0;
        return w;
    }
    for (k, wk) in w.iter_mut().enumerate() {
        let lo = k.saturating_sub(d);
        let hi = k.min(m - 1 - d);
        let mut s = 0.0;
        for i in lo..=hi {
            let mut prod = 1.0;
            for j in i..=i + d {
                if j != k {
                    prod /= (x[k] - x[j]).abs();
                }
            }
            s += prod;
        }
        *wk = if (k as isize - d as isize) % 2 == 0 { s } else { -s };
    }
    w
}

/// Tensor product of axes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub axes: Vec<Axis>,
}

impl GridSpec {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidGrid("grid needs at least one axis".into()));
        }
        for a in &axes {
            a.validate()?;
        }
        Ok(GridSpec { axes })
    }

    /// `dim` copies of a Gauss-Hermite axis.
    pub fn gauss_hermite(dim: usize, m: usize, scale: f64) -> Result<Self> {
        if dim == 0 {
            return invalid("dimension must be positive");
        }
        let axis = Axis::gauss_hermite(m, scale)?;
        Ok(GridSpec { axes: vec![axis; dim] })
    }

    pub fn uniform(dim: usize, lo: f64, hi: f64, m: usize) -> Result<Self> {
        if dim == 0 {
            return invalid("dimension must be positive");
        }
        let axis = Axis::uniform(lo, hi, m)?;
        Ok(GridSpec { axes: vec![axis; dim] })
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Axis::len).collect()
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(Axis::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Product weights as a tensor of the grid shape.
    pub fn weight_tensor(&self) -> ArrayD<f64> {
        ArrayD::from_shape_fn(IxDyn(&self.shape()), |idx| {
            (0..self.dim()).map(|d| self.axes[d].weights[idx[d]]).product()
        })
    }

    /// Coordinates of a grid point.
    pub fn point(&self, idx: &IxDyn) -> Vec<f64> {
        (0..self.dim()).map(|d| self.axes[d].nodes[idx[d]]).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.axes.iter().all(Axis::is_symmetric)
    }

    /// Sub-grid made of a contiguous block of axes.
    pub fn block(&self, range: std::ops::Range<usize>) -> GridSpec {
        GridSpec { axes: self.axes[range].to_vec() }
    }

    pub fn concat(&self, other: &GridSpec) -> GridSpec {
        let mut axes = self.axes.clone();
        axes.extend(other.axes.iter().cloned());
        GridSpec { axes }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_moment(k: usize) -> f64 {
        // int x^k e^{-x^2} dx by the recursion M_k = (k-1)/2 M_{k-2}
        if k % 2 == 1 {
            return 0.0;
        }
        let mut m = std::f64::consts::PI.sqrt();
        let mut j = 2;
        while j <= k {
            m *= (j - 1) as f64 / 2.0;
            j += 2;
        }
        m
    }

    #[test]
    fn gaussian_integrals() {
        let (x, w) = gauss_hermite_nodes(20).unwrap();
        let i0: f64 = x.iter().zip(&w).map(|(x, w)| w * (-x * x).exp()).sum();
        let i2: f64 = x.iter().zip(&w).map(|(x, w)| w * x * x * (-x * x).exp()).sum();
        assert!((i0 - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        assert!((i2 - std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn polynomial_exactness_degree_2m_minus_1() {
        for &m in &[5usize, 12, 33, 64] {
            let (x, w) = gauss_hermite_nodes(m).unwrap();
            for k in 0..2 * m {
                let q: f64 = x.iter().zip(&w).map(|(x, w)| w * (-x * x).exp() * x.powi(k as i32)).sum();
                let exact = gaussian_moment(k);
                let scale = exact.abs().max(gaussian_moment(k + (k % 2)).abs()).max(1.0);
                assert!((q - exact).abs() <= 1e-12 * scale, "m={m} k={k} q={q} exact={exact}");
            }
        }
    }

    #[test]
    fn nodes_sorted_symmetric_weights_positive() {
        let a = Axis::gauss_hermite(64, 1.0).unwrap();
        a.validate().unwrap();
        assert!(a.is_symmetric());
        let a = Axis::gauss_hermite(7, 2.0).unwrap();
        assert_eq!(a.nodes[3], 0.0);
    }

    #[test]
    fn zero_order_rejected() {
        assert!(gauss_hermite_nodes(0).is_err());
    }

    #[test]
    fn cardinal_interpolation_reproduces_hermite_span() {
        let axis = Axis::gauss_hermite(32, 1.3).unwrap();
        let f = |x: f64| {
            let r = hermite_row(20, x / 1.3);
            (r[3] - 0.5 * r[20]) / 1.3f64.sqrt()
        };
        let samples: Vec<f64> = axis.nodes.iter().map(|&x| f(x)).collect();
        let pts = [-7.1, -2.2, 0.01, 0.5, 3.3, 9.9];
        let e = axis.interpolation_matrix(&pts);
        for (p, &x) in pts.iter().enumerate() {
            let v: f64 = (0..32).map(|i| e[[p, i]] * samples[i]).sum();
            assert!((v - f(x)).abs() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn rational_interpolation_on_uniform_axis() {
        let axis = Axis::uniform(-5.0, 5.0, 201).unwrap();
        let samples: Vec<f64> = axis.nodes.iter().map(|&x| (-x * x / 2.0).exp()).collect();
        let pts = [-4.01, -0.333, 0.0, 1.234, 4.99, 6.0];
        let e = axis.interpolation_matrix(&pts);
        for (p, &x) in pts.iter().enumerate() {
            let v: f64 = (0..201).map(|i| e[[p, i]] * samples[i]).sum();
            let expect = if x > 5.0 { 0.0 } else { (-x * x / 2.0).exp() };
            assert!((v - expect).abs() < 1e-7, "x = {x}: {v} vs {expect}");
        }
    }

    #[test]
    fn from_nodes_detects_uniform_and_rejects_unsorted() {
        let a = Axis::from_nodes(vec![0.0, 0.5, 1.0, 1.5]).unwrap();
        assert_eq!(a.kind, AxisKind::Uniform);
        let b = Axis::from_nodes(vec![0.0, 0.5, 2.0]).unwrap();
        assert_eq!(b.kind, AxisKind::Nodes);
        assert!(Axis::from_nodes(vec![0.0, 0.0, 1.0]).is_err());
    }

    #[test]
    fn tensor_weights_integrate_gaussian() {
        let g = GridSpec::gauss_hermite(2, 24, 1.0).unwrap();
        let w = g.weight_tensor();
        let mut s = 0.0;
        for (idx, wv) in w.indexed_iter() {
            let p = g.point(&idx);
            s += wv * (-(p[0] * p[0] + p[1] * p[1])).exp();
        }
        assert!((s - std::f64::consts::PI).abs() < 1e-12);
    }
}
