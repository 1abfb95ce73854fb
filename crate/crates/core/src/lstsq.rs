//! Dense linear least squares by Householder QR (small problems only).

use crate::real::Real;

/// Minimizes `‖A x - b‖₂` for a column-major `A` with `cols` columns.
/// Returns `None` when `A` is numerically rank deficient.
pub(crate) fn solve<T: Real>(columns: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let m = b.len();
    let k = columns.len();
    if k == 0 || k > m {
        return None;
    }
    let mut a: Vec<Vec<T>> = columns.to_vec();
    let mut rhs = b.to_vec();
    let mut diag = vec![T::zero(); k];
    let scale = a.iter().flat_map(|c| c.iter()).fold(T::zero(), |s, &v| s.max(v.abs()));
    for j in 0..k {
        let norm = a[j][j..].iter().fold(T::zero(), |s, &v| s + v * v).sqrt();
        if !(norm > T::epsilon() * scale * T::from_usize(m).unwrap_or_else(T::one)) {
            return None;
        }
        let alpha = if a[j][j] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = a[j][j..].to_vec();
        v[0] = v[0] - alpha;
        let vnorm2 = v.iter().fold(T::zero(), |s, &x| s + x * x);
        diag[j] = alpha;
        for col in a.iter_mut().skip(j + 1) {
            let proj = v.iter().zip(&col[j..]).fold(T::zero(), |s, (&x, &y)| s + x * y);
            let f = (proj + proj) / vnorm2;
            for (c, &x) in col[j..].iter_mut().zip(&v) {
                *c = *c - f * x;
            }
        }
        let proj = v.iter().zip(&rhs[j..]).fold(T::zero(), |s, (&x, &y)| s + x * y);
        let f = (proj + proj) / vnorm2;
        for (c, &x) in rhs[j..].iter_mut().zip(&v) {
            *c = *c - f * x;
        }
    }
    let mut x = vec![T::zero(); k];
    for j in (0..k).rev() {
        let mut s = rhs[j];
        for (i, xi) in x.iter().enumerate().skip(j + 1) {
            s = s - a[i][j] * *xi;
        }
        x[j] = s / diag[j];
    }
    Some(x)
}
