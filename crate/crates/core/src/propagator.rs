//! Closed-form per-mode propagators shared by the analytic checks and the
//! grid evolution.

use crate::algebra::dirac_hamiltonian;
use crate::linalg::{c, re, ComplexMatrix, C64};
use crate::math;

/// `exp(−iH(q)t) = cos(ω̃t) I − i sin(ω̃t)/ω̃ · H(q)`, with `H(q) = α·q + βm`.
///
/// At `ω̃ = 0` the limit `sin(ω̃t)/ω̃ → t` is used, which multiplies the zero
/// Hamiltonian and leaves the identity.
pub fn dirac_propagator(q: [f64; 3], m: f64, t: f64) -> ComplexMatrix {
    let w = math::omega(q, m);
    let (s, co) = math::sin_cos(w * t);
    let sinc = if w == 0.0 { t } else { s / w };
    let h = dirac_hamiltonian(q, m);
    let id = ComplexMatrix::identity(4);
    &id.scale(re(co)) + &h.scale(c(0.0, -sinc))
}

/// `e^{−iω̃(q)t}`.
pub fn sf_phase(q: [f64; 3], m: f64, t: f64) -> C64 {
    math::cis(-math::omega(q, m) * t)
}
