//! Operator calculus and exact plane-wave machinery for the Dirac equation and
//! the equations it is linked to: the Schrodinger-Foldy equation of the
//! particle-antiparticle doublet, the generalized Maxwell system with
//! gradient-like sources, and Maxwell's equations in a medium.
//!
//! Everything here is allocation-only (`no_std` + `alloc`). Grid evolution,
//! file formats and the command line live in the `relwave` crate.
//!
//! Layout:
//! - [`linalg`]: complex matrices and real-linear operators `x -> A x + B conj(x)`.
//! - [`algebra`]: Pauli, gamma, spin-1 and doublet spin matrices, PGI symmetries.
//! - [`modes`]: wave vectors, helicity basis, Dirac spinors, Cartesian orts.
//! - [`solutions`]: solution specs, plane-wave sums and equation residuals.
//! - [`transforms`]: the U, V and Sallhofer maps and their identity checks.
//! - [`propagator`]: per-mode evolution operators.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod algebra;
mod error;
pub mod linalg;
pub mod math;
pub mod modes;
pub mod propagator;
pub mod sampling;
pub mod solutions;
pub mod transforms;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, RealLinearOperator, Spinor, C64};
