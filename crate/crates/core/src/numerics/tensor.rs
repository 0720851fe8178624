//! Axis-wise linear maps on dense tensors.

use ndarray::{Array2, ArrayD, IxDyn};

use crate::C64;

/// Apply `mat` (`m_out x m_in`) along `axis`, i.e.
/// `out[.., j, ..] = sum_i mat[j, i] values[.., i, ..]`.
pub fn apply_along_axis(values: &ArrayD<C64>, axis: usize, mat: &Array2<C64>) -> ArrayD<C64> {
    let nd = values.ndim();
    let m_in = values.shape()[axis];
    assert_eq!(mat.ncols(), m_in, "matrix does not match axis length");
    let mut perm: Vec<usize> = (0..nd).filter(|&d| d != axis).collect();
    perm.push(axis);
    let rest: usize = perm[..nd - 1].iter().map(|&d| values.shape()[d]).product();
    let moved = values.view().permuted_axes(IxDyn(&perm)).as_standard_layout().into_owned();
    let flat = moved.into_shape_with_order((rest, m_in)).expect("standard layout");
    let prod = flat.dot(&mat.t());
    let mut pshape: Vec<usize> = perm.iter().map(|&d| values.shape()[d]).collect();
    pshape[nd - 1] = mat.nrows();
    let out = prod.into_shape_with_order(IxDyn(&pshape)).expect("standard layout");
    let mut inv = vec![0; nd];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    out.permuted_axes(IxDyn(&inv)).as_standard_layout().into_owned()
}

pub fn apply_real_along_axis(values: &ArrayD<C64>, axis: usize, mat: &Array2<f64>) -> ArrayD<C64> {
    apply_along_axis(values, axis, &mat.mapv(|v| C64::new(v, 0.0)))
}

/// Permute axes into a fresh standard-layout array.
pub fn permute(values: &ArrayD<C64>, perm: &[usize]) -> ArrayD<C64> {
    values.view().permuted_axes(IxDyn(perm)).as_standard_layout().into_owned()
}

/// Reshape a standard-layout array.
pub fn reshape(values: ArrayD<C64>, shape: &[usize]) -> ArrayD<C64> {
    let values = if values.is_standard_layout() { values } else { values.as_standard_layout().into_owned() };
    values.into_shape_with_order(IxDyn(shape)).expect("element count preserved")
}

/// Khatri-Rao row product: `out[c, p * nb + q] = a[c, p] * b[c, q]`.
pub fn row_kron(a: &Array2<f64>, b: &Array2<f64>) -> Array2<C64> {
    assert_eq!(a.nrows(), b.nrows());
    let (na, nb) = (a.ncols(), b.ncols());
    let mut out = Array2::<C64>::zeros((a.nrows(), na * nb));
    for c in 0..a.nrows() {
        for p in 0..na {
            let ap = a[[c, p]];
            if ap == 0.0 {
                continue;
            }
            for q in 0..nb {
                out[[c, p * nb + q]] = C64::new(ap * b[[c, q]], 0.0);
            }
        }
    }
    out
}
