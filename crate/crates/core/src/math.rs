//! Scalar helpers backed by `libm` so results do not depend on the platform libm.

use crate::linalg::C64;

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn hypot3(v: [f64; 3]) -> f64 {
    sqrt(dot3(v, v))
}

#[inline]
pub fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn sin_cos(theta: f64) -> (f64, f64) {
    libm::sincos(theta)
}

/// `exp(i theta)`.
#[inline]
pub fn cis(theta: f64) -> C64 {
    let (s, c) = sin_cos(theta);
    C64::new(c, s)
}

#[inline]
pub fn abs(z: C64) -> f64 {
    libm::hypot(z.re, z.im)
}

#[inline]
pub fn fabs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Relativistic frequency `sqrt(k^2 + m^2)`; exactly `|k|` when `m == 0`.
#[inline]
pub fn omega(k: [f64; 3], mass: f64) -> f64 {
    sqrt(dot3(k, k) + mass * mass)
}
