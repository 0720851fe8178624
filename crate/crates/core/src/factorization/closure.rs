//! Closure of the exponential and Gaussian decay classes under twisted
//! convolution.
//!
//! In the first partial Fourier picture the product becomes
//! `F_1(g x h)(x, u) = c int F_1 g(x + v/2, u - v) F_1 h(x + (v - u)/2, v) dv`.
//! With `A`, `B` the profiles of the two factors,
//! `A + B = 2 (P/2 + R^2/2)` for `P = x^2 + u^2/4` and `R = v + x - u/2`, so
//! `sqrt A + sqrt B >= sqrt(A + B) >= (sqrt P + |R|) / sqrt 2`: the product
//! keeps exponential decay at rate `t / sqrt 2`. Gaussian decay at `kappa`
//! survives at the same `kappa`.

use ndarray::{Array1, Ix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bargmann::bounds::Regime;
use crate::error::{Error, Result};
use crate::numerics::fourier::partial_fourier_1;
use crate::numerics::function::PhaseSpaceFunction;
use crate::numerics::grid::GridSpec;
use crate::semigroups::heat::special_hermite_heat_kernel;
use crate::wigner::twisted::twisted_convolution;
use crate::C64;

use super::certify::{certify_phase, PhaseCertificate};

/// Samples of `(x, u, v)` drawn for the termwise inequality chain.
pub const CHAIN_SAMPLES: usize = 4096;
/// Box half-width for the chain samples.
pub const CHAIN_EXTENT: f64 = 8.0;
/// Half-width of the `(x, u)` window where the product identity is sampled.
pub const IDENTITY_WINDOW: f64 = 2.0;

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub samples: usize,
    /// Largest relative residual of the algebraic identity for `A + B`.
    pub identity_residual: f64,
    /// Smallest slack of `sqrt A + sqrt B >= sqrt(A + B)`.
    pub first_margin: f64,
    /// Smallest slack of `sqrt(A + B) >= (sqrt P + |R|) / sqrt 2`.
    pub second_margin: f64,
    pub holds: bool,
}

/// Checks the inequality chain termwise at random points of `[-e, e]^3`.
pub fn closure_chain_check(samples: usize, extent: f64, seed: u64) -> ChainReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut identity_residual: f64 = 0.0;
    let mut first_margin = f64::INFINITY;
    let mut second_margin = f64::INFINITY;
    for _ in 0..samples {
        let x = rng.random_range(-extent..extent);
        let u = rng.random_range(-extent..extent);
        let v = rng.random_range(-extent..extent);
        let a = (x + v / 2.0).powi(2) + 0.25 * (u - v).powi(2);
        let b = (x + (v - u) / 2.0).powi(2) + 0.25 * v * v;
        let p = x * x + 0.25 * u * u;
        let r = v + x - u / 2.0;
        let sum = a + b;
        let expanded = 2.0 * x * x + 0.5 * u * u + v * v + 2.0 * x * v - u * v - x * u;
        let completed = 2.0 * (0.5 * p + 0.5 * r * r);
        let scale = sum.max(1.0);
        identity_residual = identity_residual.max((sum - expanded).abs() / scale).max((sum - completed).abs() / scale);
        first_margin = first_margin.min(a.sqrt() + b.sqrt() - sum.sqrt());
        second_margin = second_margin.min(sum.sqrt() - (p.sqrt() + r.abs()) / 2f64.sqrt());
    }
    let holds = identity_residual < 1e-12 && first_margin > -1e-12 && second_margin > -1e-12;
    ChainReport { samples, identity_residual, first_margin, second_margin, holds }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductIdentity {
    /// Least-squares constant `c` in the product formula.
    pub constant: f64,
    /// Largest deviation relative to the peak of `F_1(g x h)`.
    pub residual: f64,
}

/// Compares `F_1(g x h)` with the `v`-integral of the shifted partial
/// transforms at grid points inside `|x|, |u| <= window`. Shifted samples use
/// the grid interpolation rule; `v` runs over the `u` quadrature.
pub fn product_identity(g: &PhaseSpaceFunction, h: &PhaseSpaceFunction, product: &PhaseSpaceFunction, window: f64) -> ProductIdentity {
    let (g1, h1, p1) = (partial_fourier_1(g), partial_fourier_1(h), partial_fourier_1(product));
    let xa = &g.grid.axes[0];
    let ua = &g.grid.axes[1];
    let gv = g1.values.view().into_dimensionality::<Ix2>().expect("two axes");
    let hv = h1.values.view().into_dimensionality::<Ix2>().expect("two axes");
    let shifted = |vals: &ndarray::ArrayView2<C64>, xs: &[f64], us: &[f64]| -> Array1<C64> {
        let ex = xa.interpolation_matrix(xs).mapv(|v| C64::new(v, 0.0));
        let eu = ua.interpolation_matrix(us);
        let rows = ex.dot(vals);
        Array1::from_shape_fn(xs.len(), |k| rows.row(k).iter().zip(eu.row(k)).map(|(a, b)| a * *b).sum())
    };
    let peak = p1.max_abs();
    let (mut num, mut den) = (C64::new(0.0, 0.0), 0.0);
    let mut pairs = Vec::new();
    for (i, &x) in xa.nodes.iter().enumerate() {
        for (j, &u) in ua.nodes.iter().enumerate() {
            if x.abs() > window || u.abs() > window {
                continue;
            }
            let vs = &ua.nodes;
            let ga = shifted(&gv, &vs.iter().map(|v| x + v / 2.0).collect::<Vec<_>>(), &vs.iter().map(|v| u - v).collect::<Vec<_>>());
            let hb = shifted(&hv, &vs.iter().map(|v| x + (v - u) / 2.0).collect::<Vec<_>>(), vs);
            let integral: C64 = (0..vs.len()).map(|k| ga[k] * hb[k] * ua.weights[k]).sum();
            let lhs = p1.values[[i, j]];
            num += lhs * integral.conj();
            den += integral.norm_sqr();
            pairs.push((lhs, integral));
        }
    }
    let c = if den > 0.0 { num / den } else { C64::new(0.0, 0.0) };
    let worst = pairs.iter().map(|(l, r)| (l - c * r).norm()).fold(0.0, f64::max);
    ProductIdentity { constant: c.re, residual: if peak > 0.0 { worst / peak } else { worst } }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub regime: Regime,
    pub t: f64,
    /// Rate at which the product is certified.
    pub product_rate: f64,
    pub product_certificate: PhaseCertificate,
    pub chain: Option<ChainReport>,
    pub identity: ProductIdentity,
    pub passed: bool,
}

fn closure(g: &PhaseSpaceFunction, h: &PhaseSpaceFunction, regime: Regime, rate: f64, product_rate: f64, t: f64) -> Result<(PhaseSpaceFunction, ClosureReport)> {
    if g.n() != 1 {
        return Err(Error::InvalidArgument("closure checks need n = 1".into()));
    }
    for (name, f) in [("g", g), ("h", h)] {
        if !certify_phase(f, regime, rate).certified {
            return Err(Error::Precondition(format!("{name} has no {regime:?} certificate at rate {rate}")));
        }
    }
    let product = twisted_convolution(g, h, 1.0)?;
    let product_certificate = certify_phase(&product, regime, product_rate);
    let chain = (regime == Regime::Exponential).then(|| closure_chain_check(CHAIN_SAMPLES, CHAIN_EXTENT, 1));
    let identity = product_identity(g, h, &product, IDENTITY_WINDOW);
    let passed = product_certificate.certified && chain.as_ref().is_none_or(|c| c.holds);
    let report = ClosureReport { regime, t, product_rate, product_certificate, chain, identity, passed };
    Ok((product, report))
}

/// Both factors certified at exponential rate `t`; the product is certified
/// at `t / sqrt 2`.
pub fn algebra_closure_check(g: &PhaseSpaceFunction, h: &PhaseSpaceFunction, t: f64) -> Result<(PhaseSpaceFunction, ClosureReport)> {
    closure(g, h, Regime::Exponential, t, t / 2f64.sqrt(), t)
}

/// Both factors certified at Gaussian rate `tanh t`; so is the product.
pub fn algebra_closure_check_entire(g: &PhaseSpaceFunction, h: &PhaseSpaceFunction, t: f64) -> Result<(PhaseSpaceFunction, ClosureReport)> {
    closure(g, h, Regime::Gaussian, t.tanh(), t.tanh(), t)
}

/// `max |p_t x p_s - p_{t+s}|` relative to `max |p_{t+s}|`.
pub fn heat_semigroup_law_error(t: f64, s: f64, phase: &GridSpec) -> Result<f64> {
    let pt = special_hermite_heat_kernel(t, phase)?;
    let ps = special_hermite_heat_kernel(s, phase)?;
    let pts = special_hermite_heat_kernel(t + s, phase)?;
    let prod = twisted_convolution(&pt, &ps, 1.0)?;
    Ok(prod.max_diff(&pts)? / pts.max_abs())
}
