//! Symmetric tridiagonal eigensolver and Gauss quadrature from recursions.
//!
//! Eigenvalues come from bisection on Sturm counts. Eigenvectors come from a
//! twisted factorization of `T - λI` (one inverse-iteration step with the
//! optimal right-hand side), which keeps tiny components accurate in relative
//! terms. Near-degenerate clusters are refined by inverse iteration with
//! reorthogonalization. Exact zeros on the off-diagonal split the matrix into
//! independent blocks.

use crate::error::{Result, TraError};
use crate::opoly::RecurrenceSpec;
use crate::real::{lit, Real};
use crate::wavop::SymTridiag;

/// Eigenvalues in ascending order, optionally with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult<T> {
    pub eigenvalues: Vec<T>,
    /// `eigenvectors[j]` belongs to `eigenvalues[j]`; its first non-zero
    /// component is positive.
    pub eigenvectors: Option<Vec<Vec<T>>>,
}

impl<T: Real> SpectrumResult<T> {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `‖T v_j - λ_j v_j‖∞`, if vectors were computed.
    pub fn residual(&self, t: &SymTridiag<T>, j: usize) -> Option<T> {
        let v = self.eigenvectors.as_ref()?.get(j)?;
        let tv = t.apply(v);
        let lambda = self.eigenvalues[j];
        Some(
            tv.iter()
                .zip(v)
                .map(|(&a, &b)| (a - lambda * b).abs())
                .fold(T::zero(), T::max),
        )
    }
}

/// Nodes and positive weights of a discrete measure.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

impl<T: Real> DiscreteMeasure<T> {
    /// `Σ_k w_k f(x_k)`.
    pub fn integrate(&self, f: impl Fn(T) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
    }
}

fn pivot_floor<T: Real>(off: &[T]) -> T {
    let max_e2 = off.iter().fold(T::one(), |m, &e| m.max(e * e));
    T::min_positive_value() * max_e2
}

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count<T: Real>(t: &SymTridiag<T>, x: T) -> usize {
    sturm_count_raw(t.diag(), t.off(), x, pivot_floor(t.off()))
}

fn sturm_count_raw<T: Real>(d: &[T], e: &[T], x: T, pivmin: T) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    for i in 0..d.len() {
        if i > 0 {
            q = (d[i] - x) - e[i - 1] * e[i - 1] / q;
        }
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < T::zero() {
            count += 1;
        }
    }
    count
}

fn gershgorin<T: Real>(d: &[T], e: &[T]) -> (T, T) {
    let n = d.len();
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for i in 0..n {
        let left = if i > 0 { e[i - 1].abs() } else { T::zero() };
        let right = if i + 1 < n { e[i].abs() } else { T::zero() };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    let pad = (hi - lo).max(hi.abs().max(lo.abs())) * lit::<T>(4.0) * T::epsilon() + T::min_positive_value();
    (lo - pad, hi + pad)
}

/// `k`-th smallest eigenvalue (0-based) of one unreduced block.
fn bisect<T: Real>(d: &[T], e: &[T], k: usize, bounds: (T, T), pivmin: T) -> T {
    let (mut lo, mut hi) = bounds;
    let two = lit::<T>(2.0);
    for _ in 0..400 {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            break;
        }
        let tol = two * T::epsilon() * (lo.abs().max(hi.abs())) + pivmin;
        if hi - lo <= tol {
            break;
        }
        if sturm_count_raw(d, e, mid, pivmin) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo + hi) / two
}

/// Splits at exact zeros of the off-diagonal; returns `(start, end)` ranges.
fn blocks<T: Real>(off: &[T], n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, &e) in off.iter().enumerate() {
        if e == T::zero() {
            out.push((start, i + 1));
            start = i + 1;
        }
    }
    out.push((start, n));
    out
}

fn guard<T: Real>(v: T, floor: T) -> T {
    if v.abs() < floor {
        if v < T::zero() {
            -floor
        } else {
            floor
        }
    } else {
        v
    }
}

fn normalize<T: Real>(v: &mut [T]) -> bool {
    let scale = v.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
    if !(scale > T::zero()) || !scale.is_finite() {
        return false;
    }
    let norm = v
        .iter()
        .fold(T::zero(), |acc, &x| acc + (x / scale) * (x / scale))
        .sqrt()
        * scale;
    for x in v.iter_mut() {
        *x = *x / norm;
    }
    true
}

/// Eigenvector of an unreduced block by twisted factorization.
fn twisted_vector<T: Real>(d: &[T], e: &[T], lambda: T, floor: T) -> Option<Vec<T>> {
    let n = d.len();
    if n == 1 {
        return Some(vec![T::one()]);
    }
    let mut dp = vec![T::zero(); n];
    let mut dm = vec![T::zero(); n];
    dp[0] = guard(d[0] - lambda, floor);
    for i in 1..n {
        dp[i] = guard(d[i] - lambda - e[i - 1] * e[i - 1] / dp[i - 1], floor);
    }
    dm[n - 1] = guard(d[n - 1] - lambda, floor);
    for i in (0..n - 1).rev() {
        dm[i] = guard(d[i] - lambda - e[i] * e[i] / dm[i + 1], floor);
    }
    let twist = (0..n)
        .min_by(|&a, &b| {
            let ga = (dp[a] + dm[a] - (d[a] - lambda)).abs();
            let gb = (dp[b] + dm[b] - (d[b] - lambda)).abs();
            ga.partial_cmp(&gb).unwrap_or(std::cmp::Ordering::Equal)
        })
        .unwrap_or(0);
    let mut z = vec![T::zero(); n];
    z[twist] = T::one();
    for i in (0..twist).rev() {
        z[i] = -e[i] / dp[i] * z[i + 1];
    }
    for i in twist..n - 1 {
        z[i + 1] = -e[i] / dm[i + 1] * z[i];
    }
    if z.iter().all(|x| x.is_finite()) && normalize(&mut z) {
        Some(z)
    } else {
        None
    }
}

/// Solves `(T - σI) x = b` by Gaussian elimination with partial pivoting.
fn shifted_solve<T: Real>(d: &[T], e: &[T], sigma: T, b: &[T], floor: T) -> Vec<T> {
    let n = d.len();
    // row i holds (diag, super, super2) after elimination
    let mut diag: Vec<T> = d.iter().map(|&v| v - sigma).collect();
    let mut sup: Vec<T> = (0..n).map(|i| if i + 1 < n { e[i] } else { T::zero() }).collect();
    let mut sup2 = vec![T::zero(); n];
    let mut sub: Vec<T> = (0..n).map(|i| if i + 1 < n { e[i] } else { T::zero() }).collect();
    let mut rhs = b.to_vec();
    for i in 0..n.saturating_sub(1) {
        if sub[i].abs() > diag[i].abs() {
            // swap rows i and i+1
            let (a0, a1, a2) = (diag[i], sup[i], sup2[i]);
            let (b0, b1, b2) = (sub[i], diag[i + 1], sup[i + 1]);
            diag[i] = b0;
            sup[i] = b1;
            sup2[i] = b2;
            sub[i] = a0;
            diag[i + 1] = a1;
            sup[i + 1] = a2;
            rhs.swap(i, i + 1);
        }
        let p = guard(diag[i], floor);
        diag[i] = p;
        let m = sub[i] / p;
        diag[i + 1] = diag[i + 1] - m * sup[i];
        sup[i + 1] = sup[i + 1] - m * sup2[i];
        rhs[i + 1] = rhs[i + 1] - m * rhs[i];
    }
    diag[n - 1] = guard(diag[n - 1], floor);
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        if i + 1 < n {
            s = s - sup[i] * x[i + 1];
        }
        if i + 2 < n {
            s = s - sup2[i] * x[i + 2];
        }
        x[i] = s / diag[i];
    }
    x
}

fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Eigenpairs of one unreduced block.
fn block_pairs<T: Real>(d: &[T], e: &[T], want_vectors: bool) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    let n = d.len();
    if n == 1 {
        let vectors = if want_vectors { vec![vec![T::one()]] } else { Vec::new() };
        return Ok((vec![d[0]], vectors));
    }
    let pivmin = pivot_floor(e);
    let bounds = gershgorin(d, e);
    let values: Vec<T> = (0..n).map(|k| bisect(d, e, k, bounds, pivmin)).collect();
    if !want_vectors {
        return Ok((values, Vec::new()));
    }

    let norm = bounds.1.abs().max(bounds.0.abs());
    let floor = T::epsilon() * norm.max(T::min_positive_value());
    let cluster_gap = lit::<T>(1e-5) * norm;
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(n);
    let mut cluster_start = 0;
    for (j, &lambda) in values.iter().enumerate() {
        if j > 0 && lambda - values[j - 1] > cluster_gap {
            cluster_start = j;
        }
        let in_cluster = j > cluster_start;
        let mut v = if in_cluster {
            None
        } else {
            twisted_vector(d, e, lambda, floor)
        };
        if v.is_none() {
            // inverse iteration, orthogonalized against the current cluster
            let mut x: Vec<T> = (0..n)
                .map(|i| {
                    let s = ((i * 7919 + j * 104729) % 1000) as f64 / 1000.0 + 0.5;
                    lit::<T>(s)
                })
                .collect();
            let shift = lambda + floor * lit::<T>((j - cluster_start) as f64);
            let mut ok = false;
            for _ in 0..5 {
                x = shifted_solve(d, e, shift, &x, floor);
                for prev in &vectors[cluster_start..j] {
                    let c = dot(&x, prev);
                    for (xi, &pi) in x.iter_mut().zip(prev) {
                        *xi = *xi - c * pi;
                    }
                }
                ok = normalize(&mut x);
                if !ok {
                    break;
                }
            }
            if !ok {
                return Err(TraError::Numerical(format!(
                    "inverse iteration failed for eigenvalue {lambda}"
                )));
            }
            v = Some(x);
        }
        vectors.push(v.expect("vector computed"));
    }
    Ok((values, vectors))
}

fn fix_sign<T: Real>(v: &mut [T]) {
    if let Some(&first) = v.iter().find(|x| **x != T::zero()) {
        if first < T::zero() {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// All eigenvalues (ascending) and, if requested, orthonormal eigenvectors.
pub fn eigendecompose<T: Real>(t: &SymTridiag<T>, want_vectors: bool) -> Result<SpectrumResult<T>> {
    let n = t.dim();
    let (d, e) = (t.diag(), t.off());
    let mut pairs: Vec<(T, Option<Vec<T>>)> = Vec::with_capacity(n);
    for (start, end) in blocks(e, n) {
        let (values, vectors) = block_pairs(&d[start..end], &e[start..end - 1], want_vectors)?;
        if want_vectors {
            for (lambda, local) in values.into_iter().zip(vectors) {
                let mut full = vec![T::zero(); n];
                full[start..end].copy_from_slice(&local);
                fix_sign(&mut full);
                pairs.push((lambda, Some(full)));
            }
        } else {
            pairs.extend(values.into_iter().map(|l| (l, None)));
        }
    }
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
    let eigenvalues = pairs.iter().map(|p| p.0).collect();
    let eigenvectors = if want_vectors {
        Some(pairs.into_iter().map(|p| p.1.expect("vector present")).collect())
    } else {
        None
    };
    Ok(SpectrumResult {
        eigenvalues,
        eigenvectors,
    })
}

/// The `k` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues<T: Real>(t: &SymTridiag<T>, k: usize) -> Vec<T> {
    let (d, e) = (t.diag(), t.off());
    let k = k.min(d.len());
    let pivmin = pivot_floor(e);
    let bounds = gershgorin(d, e);
    (0..k).map(|j| bisect(d, e, j, bounds, pivmin)).collect()
}

/// Gauss quadrature of the orthogonality measure of `rec`: nodes are the
/// eigenvalues of the `size × size` Jacobi matrix, weights the squared first
/// components of its normalized eigenvectors.
pub fn gauss_from_recurrence<T: Real>(rec: &RecurrenceSpec<T>, size: usize) -> Result<DiscreteMeasure<T>> {
    if size == 0 {
        return Err(TraError::Domain("quadrature size must be at least 1".into()));
    }
    let jacobi = SymTridiag::from_recurrence(rec, size)?;
    let spec = eigendecompose(&jacobi, true)?;
    let weights = spec
        .eigenvectors
        .expect("vectors requested")
        .iter()
        .map(|v| v[0] * v[0])
        .collect();
    Ok(DiscreteMeasure {
        nodes: spec.eigenvalues,
        weights,
    })
}
