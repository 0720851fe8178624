//! Laguerre polynomials, Laguerre functions and Gauss-Laguerre quadrature.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{invalid, Result};

/// `[L_0^a(x), ..., L_kmax^a(x)]` by
/// `(k+1) L_{k+1} = (2k+a+1-x) L_k - (k+a) L_{k-1}`.
pub fn laguerre_row(kmax: usize, a: f64, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(1.0);
    if kmax == 0 {
        return out;
    }
    out.push(1.0 + a - x);
    for k in 1..kmax {
        let kf = k as f64;
        let next = ((2.0 * kf + a + 1.0 - x) * out[k] - (kf + a) * out[k - 1]) / (kf + 1.0);
        out.push(next);
    }
    out
}

pub fn laguerre_eval(k: usize, a: usize, x: f64) -> f64 {
    laguerre_row(k, a as f64, x)[k]
}

/// Laguerre function `phi_k^a(s) = L_k^a(s^2/2) e^{-s^2/4}` at a real radius.
pub fn laguerre_function(k: usize, a: usize, s: f64) -> f64 {
    laguerre_eval(k, a, 0.5 * s * s) * (-0.25 * s * s).exp()
}

/// The same function at the purely imaginary point `(2iy, 2iv)` with
/// `r2 = y^2 + v^2`: `L_k^a(-2 r2) e^{r2}`.
pub fn laguerre_function_imaginary(k: usize, a: usize, r2: f64) -> f64 {
    laguerre_eval(k, a, -2.0 * r2) * r2.exp()
}

/// Natural log of [`laguerre_function_imaginary`] for all `k <= kmax`,
/// computed with running renormalization so large `k` stays finite.
pub fn ln_laguerre_imaginary_row(kmax: usize, a: usize, r2: f64) -> Vec<f64> {
    let x = -2.0 * r2;
    let af = a as f64;
    let mut out = Vec::with_capacity(kmax + 1);
    let mut shift = r2;
    let (mut prev, mut cur) = (0.0f64, 1.0f64);
    out.push(shift);
    for k in 0..kmax {
        let kf = k as f64;
        let next = if k == 0 { 1.0 + af - x } else { ((2.0 * kf + af + 1.0 - x) * cur - (kf + af) * prev) / (kf + 1.0) };
        prev = cur;
        cur = next;
        if cur.abs() > 1e100 {
            prev /= cur.abs();
            shift += cur.abs().ln();
            cur = cur.signum();
        }
        out.push(cur.abs().ln() + shift);
    }
    out
}

/// Nodes and weights for `int_0^inf g(r) r^a e^{-r} dr`.
pub fn gauss_laguerre_nodes(m: usize, a: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    if m == 0 {
        return invalid("Gauss-Laguerre order must be at least 1");
    }
    let af = a as f64;
    let jac = DMatrix::from_fn(m, m, |i, j| {
        if i == j {
            2.0 * i as f64 + af + 1.0
        } else if i + 1 == j || j + 1 == i {
            let k = i.max(j) as f64;
            (k * (k + af)).sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|p, q| p.total_cmp(q));
    let mf = m as f64;
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let row = laguerre_row(m, af, *x);
            let deriv = (mf * row[m] - (mf + af) * row[m - 1]) / *x;
            if deriv == 0.0 {
                break;
            }
            *x -= row[m] / deriv;
        }
    }
    // Christoffel weights from the orthonormal polynomials
    let weights = nodes
        .iter()
        .map(|&x| {
            let row = laguerre_row(m - 1, af, x);
            let mut h = (1..=a).map(|j| j as f64).product::<f64>();
            let mut s = 0.0;
            for (k, v) in row.iter().enumerate() {
                if k > 0 {
                    h *= (k as f64 + af) / k as f64;
                }
                s += v * v / h;
            }
            1.0 / s
        })
        .collect();
    Ok((nodes, weights))
}
