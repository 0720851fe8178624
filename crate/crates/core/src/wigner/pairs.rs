//! Bookkeeping for phase-space tensors whose `x_j` and `u_j` axes have to be
//! handled together.

use ndarray::{Array2, ArrayD, Axis as NdAxis, IxDyn};

use crate::numerics::tensor::{permute, reshape};
use crate::C64;

/// `(x_1..x_n, u_1..u_n)` -> merged axes `c_j = (x_j, u_j)`, row-major in the pair.
pub fn merge_pairs(values: &ArrayD<C64>, n: usize) -> ArrayD<C64> {
    let shape = values.shape().to_vec();
    let perm: Vec<usize> = (0..n).flat_map(|j| [j, n + j]).collect();
    let merged: Vec<usize> = (0..n).map(|j| shape[j] * shape[n + j]).collect();
    reshape(permute(values, &perm), &merged)
}

/// Merged axes `c_j = (a_j, b_j)` -> `(a_1..a_n, b_1..b_n)`.
pub fn split_pairs(values: ArrayD<C64>, a: &[usize], b: &[usize]) -> ArrayD<C64> {
    let n = a.len();
    let inter: Vec<usize> = (0..n).flat_map(|j| [a[j], b[j]]).collect();
    let v = reshape(values, &inter);
    let perm: Vec<usize> = (0..n).map(|j| 2 * j).chain((0..n).map(|j| 2 * j + 1)).collect();
    permute(&v, &perm)
}

/// `out[.., c, ..] = sum_q e[c, q] values[.., c, .., q, ..]`; the `q` axis is
/// removed and the `c` axis keeps its place among the remaining axes.
pub fn contract_diag(values: &ArrayD<C64>, axis_c: usize, axis_q: usize, e: &Array2<f64>) -> ArrayD<C64> {
    let nd = values.ndim();
    let shape = values.shape().to_vec();
    let others: Vec<usize> = (0..nd).filter(|&d| d != axis_c && d != axis_q).collect();
    let mut perm = others.clone();
    perm.push(axis_c);
    perm.push(axis_q);
    let (c, q) = (shape[axis_c], shape[axis_q]);
    assert_eq!(e.dim(), (c, q));
    let r: usize = others.iter().map(|&d| shape[d]).product();
    let v = reshape(permute(values, &perm), &[r, c, q]);
    let mut out = Array2::<C64>::zeros((r, c));
    for (mut row, block) in out.axis_iter_mut(NdAxis(0)).zip(v.axis_iter(NdAxis(0))) {
        for ci in 0..c {
            let mut s = C64::new(0.0, 0.0);
            for qi in 0..q {
                let w = e[[ci, qi]];
                if w != 0.0 {
                    s += block[[ci, qi]] * w;
                }
            }
            row[ci] = s;
        }
    }
    // remaining axes in original order: others with c inserted at its rank
    let mut out_shape: Vec<usize> = others.iter().map(|&d| shape[d]).collect();
    out_shape.push(c);
    let out = reshape(out.into_dyn(), &out_shape);
    let remaining: Vec<usize> = (0..nd).filter(|&d| d != axis_q).collect();
    let pos_c = remaining.iter().position(|&d| d == axis_c).unwrap();
    let k = remaining.len();
    let mut back: Vec<usize> = Vec::with_capacity(k);
    let mut o = 0;
    for slot in 0..k {
        if slot == pos_c {
            back.push(k - 1);
        } else {
            back.push(o);
            o += 1;
        }
    }
    permute(&out, &back)
}

/// Offsets `a_p + s * b_q` for all pairs, `p` major.
pub fn pair_points(a: &[f64], b: &[f64], fa: f64, fb: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(fa * x + fb * y);
        }
    }
    out
}

pub fn zeros(shape: &[usize]) -> ArrayD<C64> {
    ArrayD::zeros(IxDyn(shape))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_then_split_round_trips() {
        let v = ArrayD::from_shape_fn(IxDyn(&[2, 3, 4, 5]), |i| C64::new((i[0] * 60 + i[1] * 20 + i[2] * 5 + i[3]) as f64, 0.0));
        let m = merge_pairs(&v, 2);
        assert_eq!(m.shape(), &[8, 15]);
        assert_eq!(m[[1 * 4 + 3, 2 * 5 + 4]], v[[1, 2, 3, 4]]);
        let back = split_pairs(m, &[2, 3], &[4, 5]);
        assert_eq!(back, v);
    }

    #[test]
    fn diagonal_contraction() {
        let v = ArrayD::from_shape_fn(IxDyn(&[3, 2, 4]), |i| C64::new((i[0] + 10 * i[1] + 100 * i[2]) as f64, 0.0));
        let e = Array2::from_shape_fn((3, 4), |(c, q)| (c + q) as f64);
        let out = contract_diag(&v, 0, 2, &e);
        assert_eq!(out.shape(), &[3, 2]);
        for c in 0..3 {
            for b in 0..2 {
                let s: f64 = (0..4).map(|q| e[[c, q]] * v[[c, b, q]].re).sum();
                assert_eq!(out[[c, b]].re, s);
            }
        }
    }
}
