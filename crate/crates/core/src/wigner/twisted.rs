//! `lambda`-twisted convolution
//! `(F *_l G)(x, u) = int int F(x - y, u - v) G(y, v) e^{(i l / 2)(u.y - v.x)} dy dv`.
//!
//! Only phase spaces over `R^1` are supported. The shifted samples of `F` come
//! from the grid's interpolation rule, so the product lives on the input grid.

use ndarray::{Array2, Ix2};

use crate::error::{Error, Result};
use crate::numerics::function::{same_grid, PhaseSpaceFunction};
use crate::wigner::pairs::pair_points;
use crate::C64;

pub fn twisted_convolution(f: &PhaseSpaceFunction, g: &PhaseSpaceFunction, lambda: f64) -> Result<PhaseSpaceFunction> {
    same_grid(&f.grid, &g.grid)?;
    if f.n() != 1 {
        return Err(Error::InvalidArgument(format!("twisted convolution is implemented for n = 1, got n = {}", f.n())));
    }
    let xa = &f.grid.axes[0];
    let ua = &f.grid.axes[1];
    let (mx, mu) = (xa.len(), ua.len());
    let fv = f.values.view().into_dimensionality::<Ix2>().expect("two axes");
    let gv = g.values.view().into_dimensionality::<Ix2>().expect("two axes");
    // tu[j, (q, r)]: interpolation of the u axis at u_q - v_r
    let tu = ua.interpolation_matrix(&pair_points(&ua.nodes, &ua.nodes, 1.0, -1.0)).t().mapv(|v| C64::new(v, 0.0));
    let half = 0.5 * lambda;
    let mut out = Array2::<C64>::zeros((mx, mu));
    let mut h = Array2::<C64>::zeros((mx, mu));
    for p in 0..mx {
        let xp = xa.nodes[p];
        let shifted: Vec<f64> = xa.nodes.iter().map(|y| xp - y).collect();
        let tx = xa.interpolation_matrix(&shifted).mapv(|v| C64::new(v, 0.0));
        let b = tx.dot(&fv).dot(&tu);
        for l in 0..mx {
            for r in 0..mu {
                h[[l, r]] = gv[[l, r]] * C64::from_polar(xa.weights[l] * ua.weights[r], -half * ua.nodes[r] * xp);
            }
        }
        for q in 0..mu {
            let mut acc = C64::new(0.0, 0.0);
            for l in 0..mx {
                let row = b.row(l);
                let hl = h.row(l);
                let mut s = C64::new(0.0, 0.0);
                for r in 0..mu {
                    s += hl[r] * row[q * mu + r];
                }
                acc += s * C64::from_polar(1.0, half * ua.nodes[q] * xa.nodes[l]);
            }
            out[[p, q]] = acc;
        }
    }
    PhaseSpaceFunction::new(f.grid.clone(), out.into_dyn())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::grid::GridSpec;
    use crate::wigner::weyl::weyl_matrix_spectral;
    use crate::wigner::wigner::special_hermite;
    use std::f64::consts::PI;

    #[test]
    fn plain_convolution_of_gaussians() {
        let grid = GridSpec::uniform(2, -9.0, 9.0, 61).unwrap();
        let gauss = PhaseSpaceFunction::from_fn(&grid, |x, u| C64::new((-(x[0] * x[0] + u[0] * u[0]) / 2.0).exp(), 0.0));
        let conv = twisted_convolution(&gauss, &gauss, 0.0).unwrap();
        let exact = PhaseSpaceFunction::from_fn(&grid, |x, u| C64::new(PI * (-(x[0] * x[0] + u[0] * u[0]) / 4.0).exp(), 0.0));
        let mut worst: f64 = 0.0;
        for (idx, v) in conv.values.indexed_iter() {
            let p = grid.point(&idx);
            if p[0].abs() <= 4.5 && p[1].abs() <= 4.5 {
                worst = worst.max((v - exact.values[&idx]).norm());
            }
        }
        assert!(worst < 1e-8, "{worst}");
    }

    #[test]
    fn special_hermite_product_rule() {
        let phase = GridSpec::gauss_hermite(2, 48, 1.0).unwrap();
        let c = (2.0 * PI).sqrt();
        let prod = twisted_convolution(&special_hermite(&[1], &[2], &phase).unwrap(), &special_hermite(&[2], &[0], &phase).unwrap(), 1.0).unwrap();
        let expect = special_hermite(&[1], &[0], &phase).unwrap().scaled(C64::new(c, 0.0));
        assert!(prod.max_diff(&expect).unwrap() < 1e-7, "{}", prod.max_diff(&expect).unwrap());
        let zero = twisted_convolution(&special_hermite(&[1], &[2], &phase).unwrap(), &special_hermite(&[3], &[0], &phase).unwrap(), 1.0).unwrap();
        assert!(zero.max_abs() < 1e-7);
    }

    #[test]
    fn weyl_is_multiplicative() {
        let phase = GridSpec::gauss_hermite(2, 48, 1.0).unwrap();
        let f = special_hermite(&[0], &[1], &phase).unwrap().add(&special_hermite(&[2], &[2], &phase).unwrap().scaled(C64::new(0.0, 0.5))).unwrap();
        let g = special_hermite(&[1], &[3], &phase).unwrap().add(&special_hermite(&[2], &[0], &phase).unwrap().scaled(C64::new(-0.4, 0.1))).unwrap();
        let fg = twisted_convolution(&f, &g, 1.0).unwrap();
        let lhs = weyl_matrix_spectral(&fg, 8);
        let rhs = weyl_matrix_spectral(&f, 8).compose(&weyl_matrix_spectral(&g, 8)).unwrap();
        assert!(lhs.max_diff(&rhs).unwrap() < 1e-6, "{}", lhs.max_diff(&rhs).unwrap());
    }
}
