//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar used throughout the crate (implemented for `f32` and `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// Converts an index into the working scalar.
#[inline]
pub fn idx<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("index representable in scalar type")
}

/// Wraps an angle into the principal range (-π, π].
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = T::PI() + T::PI();
    let mut r = theta - (theta / two_pi).round() * two_pi;
    if r <= -T::PI() {
        r = r + two_pi;
    } else if r > T::PI() {
        r = r - two_pi;
    }
    r
}

/// Distance between two angles modulo `period`, in [0, period/2].
pub fn angle_distance_mod<T: Real>(a: T, b: T, period: T) -> T {
    let d = (a - b) % period;
    let d = if d < T::zero() { d + period } else { d };
    d.min(period - d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_into_principal_range() {
        let pi = std::f64::consts::PI;
        assert!((wrap_angle(3.0 * pi) - pi).abs() < 1e-12);
        assert!((wrap_angle(-pi) - pi).abs() < 1e-12);
        assert!((wrap_angle(0.25) - 0.25).abs() < 1e-15);
        assert!((wrap_angle(-7.0_f64) - (-7.0 + 2.0 * pi)).abs() < 1e-12);
    }

    #[test]
    fn modular_distance() {
        let h = std::f64::consts::FRAC_PI_2;
        assert!(angle_distance_mod(0.1, 0.1 + 3.0 * h, h) < 1e-12);
        assert!((angle_distance_mod(0.0, h - 0.01, h) - 0.01).abs() < 1e-12);
    }
}
