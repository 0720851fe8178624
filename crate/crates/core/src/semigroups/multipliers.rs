//! Hermite semigroup `e^{-tH}` and Poisson-Hermite semigroup `e^{-t sqrt(H)}`
//! as diagonal multipliers on Hermite coefficients.

use crate::error::{invalid, Result};
use crate::special::coeffs::HermiteCoefficients;

fn eigenvalue(n: usize, level: usize) -> f64 {
    (2 * level + n) as f64
}

pub fn hermite_semigroup(c: &HermiteCoefficients, t: f64) -> Result<HermiteCoefficients> {
    if !(t >= 0.0) {
        return invalid(format!("backward heat flow refused (t = {t})"));
    }
    Ok(c.map_levels(|k| (-eigenvalue(c.n, k) * t).exp()))
}

pub fn poisson_hermite_semigroup(c: &HermiteCoefficients, t: f64) -> Result<HermiteCoefficients> {
    if !(t >= 0.0) {
        return invalid(format!("Poisson-Hermite semigroup needs t >= 0 (t = {t})"));
    }
    Ok(c.map_levels(|k| (-eigenvalue(c.n, k).sqrt() * t).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use proptest::prelude::*;

    fn table(vals: &[(f64, f64)]) -> HermiteCoefficients {
        HermiteCoefficients::from_levels(vals.iter().map(|&(a, b)| C64::new(a, b)).collect())
    }

    #[test]
    fn hermite_functions_are_eigenvectors() {
        let c = HermiteCoefficients::unit(2, 5, &[1, 2]);
        let out = hermite_semigroup(&c, 0.3).unwrap();
        assert!((out.get(&[1, 2]).re - (-8.0f64 * 0.3).exp()).abs() < 1e-15);
        assert_eq!(out.norm_sq(), out.get(&[1, 2]).norm_sqr());
        let p = poisson_hermite_semigroup(&HermiteCoefficients::unit(2, 3, &[0, 0]), 0.7).unwrap();
        assert!((p.get(&[0, 0]).re - (-0.7 * 2f64.sqrt()).exp()).abs() < 1e-15);
    }

    #[test]
    fn zero_time_and_negative_time() {
        let c = table(&[(1.0, 0.5), (0.0, -2.0)]);
        assert_eq!(hermite_semigroup(&c, 0.0).unwrap(), c);
        assert!(hermite_semigroup(&c, -0.1).is_err());
        assert!(poisson_hermite_semigroup(&c, -0.1).is_err());
    }

    proptest! {
        #[test]
        fn semigroup_laws(t in 0.0..2.0f64, s in 0.0..2.0f64, re in proptest::collection::vec(-1.0..1.0f64, 12)) {
            let c = table(&re.iter().map(|&r| (r, 0.5 * r)).collect::<Vec<_>>());
            let a = hermite_semigroup(&hermite_semigroup(&c, t).unwrap(), s).unwrap();
            let b = hermite_semigroup(&c, t + s).unwrap();
            prop_assert!(a.sub(&b).max_abs() <= 1e-14);
            let p = poisson_hermite_semigroup(&hermite_semigroup(&c, t).unwrap(), s).unwrap();
            let q = hermite_semigroup(&poisson_hermite_semigroup(&c, s).unwrap(), t).unwrap();
            prop_assert!(p.sub(&q).max_abs() <= 1e-14);
            for (x, y) in b.values.iter().zip(&c.values) {
                prop_assert!(x.norm() <= y.norm() + 1e-15);
            }
        }
    }
}
