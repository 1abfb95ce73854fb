//! Log-gamma on the complex plane and the real axis.
//!
//! `ln Γ(z)` is evaluated by shifting `z` to `Re z ≥ 10` with the functional
//! equation and summing the Stirling series there. The shift is performed as
//! a sum of principal logarithms so the result is the analytic continuation of
//! `ln Γ` with its branch cut on the negative real axis; its imaginary part is
//! the continuous `arg Γ(z)`, not reduced to (-π, π].

use num_complex::Complex;

use crate::error::{Result, TraError};
use crate::real::{lit, Real};

const STIRLING_SHIFT: f64 = 10.0;

// B_{2k} / (2k (2k - 1)), k = 1..=10
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

/// Principal-branch `ln Γ(z)` for complex `z`.
pub fn ln_gamma<T: Real>(z: Complex<T>) -> Result<Complex<T>> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(TraError::Domain(format!("non-finite log-gamma argument {z:?}")));
    }
    if z.im == T::zero() && z.re <= T::zero() && z.re == z.re.round() {
        return Err(TraError::Pole(z.re.to_f64().unwrap_or(f64::NAN)));
    }

    let mut w = z;
    let mut shift = Complex::new(T::zero(), T::zero());
    let threshold = lit::<T>(STIRLING_SHIFT);
    while w.re < threshold {
        shift = shift + w.ln();
        w = w + T::one();
    }

    let half = lit::<T>(0.5);
    let half_ln_two_pi = lit::<T>(0.918_938_533_204_672_7);
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex::new(T::zero(), T::zero());
    let mut power = inv;
    for &c in STIRLING.iter() {
        series = series + power * lit::<T>(c);
        power = power * inv2;
    }
    let stirling = (w - half) * w.ln() - w + half_ln_two_pi + series;
    Ok(stirling - shift)
}

/// `(ln |Γ(re + i im)|, arg Γ(re + i im))` on the principal branch of `ln Γ`.
pub fn log_gamma_complex<T: Real>(re: T, im: T) -> Result<(T, T)> {
    let v = ln_gamma(Complex::new(re, im))?;
    Ok((v.re, v.im))
}

/// `ln |Γ(x)|` for real `x`.
pub fn ln_gamma_real<T: Real>(x: T) -> Result<T> {
    Ok(ln_gamma(Complex::new(x, T::zero()))?.re)
}
