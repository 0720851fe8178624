//! Weighted coefficient estimate for Fourier-Wigner transforms:
//! `sum e^{2t sqrt(2|a| + 2|b| + 2n)} |(V(f1, f2), Phi_{a,b})|^2`
//! is at most the product of the squared analytic norms of `f1` and `f2`,
//! because the special Hermite coefficients factor as `c1_a conj(c2_b)` and
//! `sqrt(p + q) <= sqrt p + sqrt q`.

use serde::Serialize;

use crate::error::Result;
use crate::numerics::function::SampledFunction;
use crate::special::coeffs::{hermite_coeffs, HermiteCoefficients};
use crate::wigner::wigner::{special_hermite_pairings, wigner_transform};

#[derive(Clone, Debug, Serialize)]
pub struct TensorEstimateReport {
    pub t: f64,
    pub trunc: usize,
    pub lhs: f64,
    pub rhs: f64,
    /// Largest deviation of the sampled pairings from `c1_a conj(c2_b)`.
    pub expansion_error: f64,
    pub holds: bool,
}

fn ln_weight(n: usize, level: usize, t: f64) -> f64 {
    2.0 * t * ((2 * level + n) as f64).sqrt()
}

fn weighted_norm_sq(c: &HermiteCoefficients, t: f64) -> f64 {
    c.indices
        .iter()
        .zip(&c.values)
        .map(|(a, v)| (ln_weight(c.n, HermiteCoefficients::level(a), t) + v.norm_sqr().ln()).exp())
        .sum()
}

pub fn tensor_estimate_check(f1: &SampledFunction, f2: &SampledFunction, t: f64, trunc: usize) -> Result<TensorEstimateReport> {
    let n = f1.dim();
    let c1 = hermite_coeffs(f1, trunc);
    let c2 = hermite_coeffs(f2, trunc);
    let v = wigner_transform(f1, f2)?;
    let (idx, p) = special_hermite_pairings(&v, trunc);
    let mut lhs = 0.0;
    let mut expansion_error: f64 = 0.0;
    for (a, alpha) in idx.iter().enumerate() {
        for (b, beta) in idx.iter().enumerate() {
            let level = HermiteCoefficients::level(alpha) + HermiteCoefficients::level(beta);
            let w = 2.0 * t * ((2 * level + 2 * n) as f64).sqrt();
            lhs += (w + p[[a, b]].norm_sqr().ln()).exp();
            expansion_error = expansion_error.max((p[[a, b]] - c1.get(alpha) * c2.get(beta).conj()).norm());
        }
    }
    let rhs = weighted_norm_sq(&c1, t) * weighted_norm_sq(&c2, t);
    Ok(TensorEstimateReport { t, trunc, lhs, rhs, expansion_error, holds: lhs <= rhs * (1.0 + 1e-9) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::mapping::random_hermite_function;
    use crate::numerics::grid::GridSpec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_pairs_satisfy_estimate() {
        let g = GridSpec::gauss_hermite(1, 64, 1.0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..4 {
            let a = random_hermite_function(&mut rng, &g, 4);
            let b = random_hermite_function(&mut rng, &g, 4);
            let r = tensor_estimate_check(&a, &b, 0.4, 8).unwrap();
            assert!(r.holds && r.expansion_error < 1e-8, "{r:?}");
            assert!(r.lhs > 0.0);
        }
    }
}
