//! Orthogonal polynomials from three-term recursions.
//!
//! A family is described by coefficient generators `(a_n, b_n, c_n)` with
//!
//! ```text
//! z c_n P_n(z) = a_n P_n(z) + b_{n-1} P_{n-1}(z) + b_n P_{n+1}(z),   P_0 = 1, P_1 = (z c_0 - a_0) / b_0.
//! ```
//!
//! The classical families (Laguerre, Chebyshev of the second kind, Jacobi)
//! are evaluated by their own forward recursions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Result, TraError};
use crate::real::{idx, lit, Real};
use crate::special::ln_gamma_real;

/// Coefficient generator `n -> value`.
pub type Coefficient<T> = Arc<dyn Fn(usize) -> T + Send + Sync>;

/// Coefficients `(a_n, b_n, c_n)` of a three-term recursion.
#[derive(Clone)]
pub struct RecurrenceSpec<T> {
    a: Coefficient<T>,
    b: Coefficient<T>,
    c: Coefficient<T>,
    label: String,
}

impl<T: Real> RecurrenceSpec<T> {
    pub fn new(
        label: impl Into<String>,
        a: impl Fn(usize) -> T + Send + Sync + 'static,
        b: impl Fn(usize) -> T + Send + Sync + 'static,
        c: impl Fn(usize) -> T + Send + Sync + 'static,
    ) -> Self {
        RecurrenceSpec {
            a: Arc::new(a),
            b: Arc::new(b),
            c: Arc::new(c),
            label: label.into(),
        }
    }

    /// Recursion with `c_n = 1`, i.e. an orthonormal polynomial family `z P = J P`.
    pub fn symmetric(
        label: impl Into<String>,
        a: impl Fn(usize) -> T + Send + Sync + 'static,
        b: impl Fn(usize) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::new(label, a, b, |_| T::one())
    }

    pub fn a(&self, n: usize) -> T {
        (self.a)(n)
    }

    pub fn b(&self, n: usize) -> T {
        (self.b)(n)
    }

    pub fn c(&self, n: usize) -> T {
        (self.c)(n)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Checks `b_n² > 0` and `c_n ≠ 0` (both finite) at index `n`.
    pub fn check(&self, n: usize) -> Result<()> {
        let b = self.b(n);
        if !b.is_finite() || !(b * b > T::zero()) {
            return Err(self.invalid(n, "b_n^2 must be positive"));
        }
        let c = self.c(n);
        if !c.is_finite() || c == T::zero() {
            return Err(self.invalid(n, "c_n must be non-zero"));
        }
        if !self.a(n).is_finite() {
            return Err(self.invalid(n, "a_n must be finite"));
        }
        Ok(())
    }

    fn invalid(&self, index: usize, reason: &'static str) -> TraError {
        TraError::InvalidRecurrence {
            family: self.label.clone(),
            index,
            reason,
        }
    }
}

impl<T> fmt::Debug for RecurrenceSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RecurrenceSpec")
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

/// Values `P_0(z), ..., P_N(z)` of a recursion-defined family.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence<T> {
    pub z: T,
    pub values: Vec<T>,
}

impl<T: Real> PolySequence<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.values.len() - 1
    }
}

/// Evaluates `P_0(z) ..= P_{n_max}(z)` by forward recursion.
pub fn eval_recursion<T: Real>(rec: &RecurrenceSpec<T>, z: T, n_max: usize) -> Result<PolySequence<T>> {
    let mut values = Vec::with_capacity(n_max + 1);
    values.push(T::one());
    if n_max == 0 {
        return Ok(PolySequence { z, values });
    }
    rec.check(0)?;
    values.push((z * rec.c(0) - rec.a(0)) / rec.b(0));
    let mut b_prev = rec.b(0);
    for n in 1..n_max {
        rec.check(n)?;
        let b = rec.b(n);
        let next = ((z * rec.c(n) - rec.a(n)) * values[n] - b_prev * values[n - 1]) / b;
        values.push(next);
        b_prev = b;
    }
    Ok(PolySequence { z, values })
}

fn require_gt_minus_one<T: Real>(name: &str, v: T) -> Result<()> {
    if !(v > -T::one()) || !v.is_finite() {
        return Err(TraError::Domain(format!("{name} = {v} must exceed -1")));
    }
    Ok(())
}

/// Associated Laguerre values `L_0^ν(y) ..= L_{n_max}^ν(y)`.
pub fn laguerre_sequence<T: Real>(n_max: usize, nu: T, y: T) -> Result<Vec<T>> {
    require_gt_minus_one("ν", nu)?;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(T::one());
    if n_max >= 1 {
        out.push(nu + T::one() - y);
    }
    for n in 1..n_max {
        let nf = idx::<T>(n);
        let two = lit::<T>(2.0);
        let next = ((two * nf + T::one() + nu - y) * out[n] - (nf + nu) * out[n - 1]) / (nf + T::one());
        out.push(next);
    }
    Ok(out)
}

/// Associated Laguerre polynomial `L_n^ν(y)`.
pub fn laguerre<T: Real>(n: usize, nu: T, y: T) -> Result<T> {
    Ok(laguerre_sequence(n, nu, y)?[n])
}

/// Chebyshev values `U_0(y) ..= U_{n_max}(y)` of the second kind.
pub fn chebyshev_u_sequence<T: Real>(n_max: usize, y: T) -> Vec<T> {
    let two_y = y + y;
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(T::one());
    if n_max >= 1 {
        out.push(two_y);
    }
    for n in 1..n_max {
        let next = two_y * out[n] - out[n - 1];
        out.push(next);
    }
    out
}

/// Chebyshev polynomial of the second kind `U_n(y)`.
pub fn chebyshev_u<T: Real>(n: usize, y: T) -> T {
    chebyshev_u_sequence(n, y)[n]
}

/// Jacobi values `P_0^{(μ,ν)}(y) ..= P_{n_max}^{(μ,ν)}(y)`.
pub fn jacobi_sequence<T: Real>(n_max: usize, mu: T, nu: T, y: T) -> Result<Vec<T>> {
    require_gt_minus_one("μ", mu)?;
    require_gt_minus_one("ν", nu)?;
    let one = T::one();
    let two = lit::<T>(2.0);
    let mut out = Vec::with_capacity(n_max + 1);
    out.push(one);
    if n_max >= 1 {
        out.push(((mu + nu + two) * y + (mu - nu)) / two);
    }
    let ab = mu + nu;
    for n in 1..n_max {
        let nf = idx::<T>(n);
        let s = two * nf + ab;
        let lead = two * (nf + one) * (nf + ab + one) * s;
        let c1 = (s + one) * ((s + two) * s * y + mu * mu - nu * nu);
        let c2 = two * (nf + mu) * (nf + nu) * (s + two);
        let next = (c1 * out[n] - c2 * out[n - 1]) / lead;
        out.push(next);
    }
    Ok(out)
}

/// Jacobi polynomial `P_n^{(μ,ν)}(y)`.
pub fn jacobi<T: Real>(n: usize, mu: T, nu: T, y: T) -> Result<T> {
    Ok(jacobi_sequence(n, mu, nu, y)?[n])
}

/// Laguerre-basis normalization `A_n = sqrt(Γ(n+1) / Γ(n+ν+1))`.
pub fn norm_laguerre<T: Real>(n: usize, nu: T) -> Result<T> {
    require_gt_minus_one("ν", nu)?;
    let nf = idx::<T>(n);
    let log = ln_gamma_real(nf + T::one())? - ln_gamma_real(nf + nu + T::one())?;
    Ok((lit::<T>(0.5) * log).exp())
}

/// Jacobi-basis normalization
/// `A_n = sqrt((2n+μ+ν+1)/2^{μ+ν+1} · Γ(n+1)Γ(n+μ+ν+1) / (Γ(n+μ+1)Γ(n+ν+1)))`.
pub fn norm_jacobi<T: Real>(n: usize, mu: T, nu: T) -> Result<T> {
    require_gt_minus_one("μ", mu)?;
    require_gt_minus_one("ν", nu)?;
    let one = T::one();
    let nf = idx::<T>(n);
    let ab = mu + nu;
    let two_pow = (ab + one) * lit::<T>(std::f64::consts::LN_2);
    let common = ln_gamma_real(nf + one)? - ln_gamma_real(nf + mu + one)? - ln_gamma_real(nf + nu + one)? - two_pow;
    // At n = 0, (μ+ν+1) Γ(μ+ν+1) = Γ(μ+ν+2) sidesteps the pole at μ+ν = -1.
    let log = if n == 0 {
        common + ln_gamma_real(ab + lit::<T>(2.0))?
    } else {
        common + ln_gamma_real(nf + ab + one)? + (lit::<T>(2.0) * nf + ab + one).ln()
    };
    Ok((lit::<T>(0.5) * log).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: f64, k: usize) -> f64 {
        // generalized binomial (n choose k) for real n
        (0..k).fold(1.0, |acc, j| acc * (n - j as f64) / (j as f64 + 1.0))
    }

    fn factorial(k: usize) -> f64 {
        (1..=k).map(|j| j as f64).product()
    }

    // L_n^ν(y) = Σ_k (-1)^k C(n+ν, n-k) y^k / k!
    fn laguerre_series(n: usize, nu: f64, y: f64) -> f64 {
        (0..=n)
            .map(|k| (-1f64).powi(k as i32) * binomial(n as f64 + nu, n - k) * y.powi(k as i32) / factorial(k))
            .sum()
    }

    // P_n^{(a,b)}(y) = Σ_s C(n+a, n-s) C(n+b, s) ((y-1)/2)^s ((y+1)/2)^{n-s}
    fn jacobi_series(n: usize, a: f64, b: f64, y: f64) -> f64 {
        (0..=n)
            .map(|s| {
                binomial(n as f64 + a, n - s)
                    * binomial(n as f64 + b, s)
                    * ((y - 1.0) / 2.0).powi(s as i32)
                    * ((y + 1.0) / 2.0).powi((n - s) as i32)
            })
            .sum()
    }

    #[test]
    fn unit_coefficient_recursion() {
        let rec = RecurrenceSpec::new("unit", |_| 0.0, |_| 1.0, |_| 1.0);
        let seq = eval_recursion(&rec, 0.0_f64, 2).unwrap();
        assert_eq!(seq.values, vec![1.0, 0.0, -1.0]);
        assert_eq!(eval_recursion(&rec, 0.3, 0).unwrap().values, vec![1.0]);
    }

    #[test]
    fn flat_well_recursion_is_degenerate() {
        let gamma = 0.0_f64;
        let rec = RecurrenceSpec::symmetric("sinusoidal well", |n| ((n + 1) * (n + 1)) as f64, move |_| gamma / 2.0);
        let err = eval_recursion(&rec, 1.0, 3).unwrap_err();
        assert!(matches!(err, TraError::InvalidRecurrence { index: 0, .. }));
    }

    #[test]
    fn zero_scaling_rejected() {
        let rec = RecurrenceSpec::new("bad c", |_| 0.0, |_| 1.0, |n| if n == 2 { 0.0 } else { 1.0 });
        assert!(eval_recursion(&rec, 0.5_f64, 2).is_ok());
        let err = eval_recursion(&rec, 0.5_f64, 5).unwrap_err();
        assert!(matches!(err, TraError::InvalidRecurrence { index: 2, .. }));
    }

    #[test]
    fn laguerre_low_degree() {
        assert_eq!(laguerre(0, 0.7, 3.0).unwrap(), 1.0);
        assert!((laguerre(1, 0.5_f64, 2.0).unwrap() + 0.5).abs() < 1e-15);
        assert!(laguerre(2, -1.0, 1.0).is_err());
    }

    #[test]
    fn laguerre_matches_series() {
        let oracle = laguerre_series(5, 3.0, 1.7);
        let v = laguerre(5, 3.0, 1.7).unwrap();
        assert!((v - oracle).abs() <= 1e-13 * oracle.abs().max(1.0), "{v} vs {oracle}");
        for &(n, nu, y) in &[(9usize, 0.5, 4.2), (12, 2.5, 0.3), (7, 11.0, 9.5)] {
            let o = laguerre_series(n, nu, y);
            let v = laguerre(n, nu, y).unwrap();
            assert!((v - o).abs() <= 1e-11 * o.abs().max(1.0), "n={n}: {v} vs {o}");
        }
    }

    #[test]
    fn chebyshev_values() {
        assert_eq!(chebyshev_u(0, 0.3_f64), 1.0);
        assert!((chebyshev_u(1, 0.3_f64) - 0.6).abs() < 1e-15);
        let t = 0.4_f64;
        let oracle = (7.0 * t).sin() / t.sin();
        assert!((chebyshev_u(6, t.cos()) - oracle).abs() < 1e-13);
    }

    #[test]
    fn jacobi_matches_series() {
        let (mu, nu) = (1.5_f64, 2.872281323);
        assert_eq!(jacobi(0, mu, nu, 0.1).unwrap(), 1.0);
        let y = 0.25;
        let p1 = ((mu + nu + 2.0) * y + (mu - nu)) / 2.0;
        assert!((jacobi(1, mu, nu, y).unwrap() - p1).abs() < 1e-15);
        let oracle = jacobi_series(4, mu, nu, y);
        let v = jacobi(4, mu, nu, y).unwrap();
        assert!((v - oracle).abs() <= 1e-13 * oracle.abs().max(1.0), "{v} vs {oracle}");
        // μ + ν = -1 at the start of the recursion
        let o = jacobi_series(6, -0.5, -0.5, 0.3);
        assert!((jacobi(6, -0.5, -0.5, 0.3).unwrap() - o).abs() < 1e-12);
        assert!(jacobi(3, -1.2, 0.0, 0.0).is_err());
    }

    #[test]
    fn laguerre_norms() {
        assert!((norm_laguerre(0, 0.0_f64).unwrap() - 1.0).abs() < 1e-15);
        assert!((norm_laguerre(0, 3.0_f64).unwrap() - (1.0 / 6.0_f64).sqrt()).abs() < 1e-15);
        // A_n^2 = Π_{k=1..n} k/(k+ν) / Γ(ν+1); Γ(3.5) = 15√π/8
        let nu = 2.5;
        let gamma_nu1 = 15.0 * std::f64::consts::PI.sqrt() / 8.0;
        let prod: f64 = (1..=20).map(|k| k as f64 / (k as f64 + nu)).product();
        let oracle = (prod / gamma_nu1).sqrt();
        let v = norm_laguerre(20, nu).unwrap();
        assert!(((v - oracle) / oracle).abs() < 1e-12, "{v} vs {oracle}");
        assert!(norm_laguerre(400, 1.0_f64).unwrap().is_finite());
    }

    #[test]
    fn jacobi_norms() {
        assert!((norm_jacobi(0, 0.0, 0.0_f64).unwrap() - 0.5_f64.sqrt()).abs() < 1e-15);
        // μ=ν=1/2, n=0: (2/4)·Γ(2)/Γ(3/2)^2 = 2/π
        let v = norm_jacobi(0, 0.5, 0.5_f64).unwrap();
        assert!((v - (2.0 / std::f64::consts::PI).sqrt()).abs() < 1e-14);

        // A_n^2 / A_0^2 as a rational product in n
        let (mu, nu) = (1.5_f64, 2.872281323);
        let a0 = norm_jacobi(0, mu, nu).unwrap();
        let mut ratio = (2.0 * 10.0 + mu + nu + 1.0) / (mu + nu + 1.0);
        for k in 0..10 {
            let k = k as f64;
            ratio *= (k + 1.0) * (k + mu + nu + 1.0) / ((k + mu + 1.0) * (k + nu + 1.0));
        }
        let oracle = a0 * ratio.sqrt();
        let v = norm_jacobi(10, mu, nu).unwrap();
        assert!(((v - oracle) / oracle).abs() < 1e-12, "{v} vs {oracle}");
        assert!(norm_jacobi(0, -0.5, -0.5_f64).unwrap().is_finite());
    }
}
