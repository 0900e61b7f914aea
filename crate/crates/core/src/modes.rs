//! Momentum-space building blocks: wave vectors, the spin-1 helicity basis,
//! Dirac spinors and the Cartesian orts.

use crate::algebra::{dirac_hamiltonian, spin1_projection};
use crate::error::{Error, Result};
use crate::linalg::{c, inner, re, spinor_distance, ComplexMatrix, Spinor, C64, ONE, ZERO};
use crate::math;

/// A spatial wave vector with its mass and frequency `ω̃ = sqrt(k² + m²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveVector {
    k: [f64; 3],
    mass: f64,
    omega: f64,
}

impl WaveVector {
    pub fn new(k: [f64; 3], mass: f64) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if !k.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("wave vector"));
        }
        let omega = math::omega(k, mass);
        if omega == 0.0 {
            return Err(Error::ZeroFrequency);
        }
        Ok(Self { k, mass, omega })
    }

    pub fn massless(k: [f64; 3]) -> Result<Self> {
        Self::new(k, 0.0)
    }

    pub fn k(&self) -> [f64; 3] {
        self.k
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn norm_k(&self) -> f64 {
        math::hypot3(self.k)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// `e₁..e₄` of the electromagnetic expansion.
    Helicity,
    /// `v⁻₁, v⁻₂, v⁺₃, v⁺₄`.
    DiracSpinor,
    /// `d₁..d₄`.
    Cartesian,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisQuad {
    pub kind: BasisKind,
    pub vectors: [Spinor; 4],
}

impl BasisQuad {
    /// `‖G − I‖_F` for the Gram matrix `G_ab = v_a† v_b`.
    pub fn gram_residual(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let target = if a == b { ONE } else { ZERO };
                acc += (inner(&self.vectors[a], &self.vectors[b]) - target).norm_sqr();
            }
        }
        math::sqrt(acc)
    }

    /// `‖Σ_a v_a v_a† − I‖_F`.
    pub fn completeness_residual(&self) -> f64 {
        let mut acc = 0.0;
        for r in 0..4 {
            for col in 0..4 {
                let s: C64 = self.vectors.iter().map(|v| v[r] * v[col].conj()).sum();
                let target = if r == col { ONE } else { ZERO };
                acc += (s - target).norm_sqr();
            }
        }
        math::sqrt(acc)
    }
}

/// Eigenvalues of `S·k̂` on `e⃗₁, e⃗₂, e⃗₃` for the basis built by [`helicity_basis`].
pub const HELICITY_EIGENVALUES: [f64; 3] = [-1.0, 1.0, 0.0];

/// Spin-1 helicity basis; uses `ω̃ = |k|` regardless of the vector's mass.
///
/// On the `k³` axis the formula for `e⃗₁` is 0/0; the limit taken along
/// `k¹ → 0⁺` gives `(−i sign(k³), −1, 0)/√2`.
pub fn helicity_basis(wv: &WaveVector) -> Result<BasisQuad> {
    let k = wv.k();
    let w = wv.norm_k();
    if w == 0.0 {
        return Err(Error::ZeroWaveVector);
    }
    let rho2 = k[0] * k[0] + k[1] * k[1];
    let s2 = core::f64::consts::FRAC_1_SQRT_2;
    let e1: [C64; 3] = if rho2 == 0.0 {
        let sign = if k[2] >= 0.0 { 1.0 } else { -1.0 };
        [c(0.0, -sign * s2), re(-s2), ZERO]
    } else {
        let n = 1.0 / (w * math::sqrt(2.0 * rho2));
        [
            c(w * k[1], -k[0] * k[2]) * n,
            c(-w * k[0], -k[1] * k[2]) * n,
            c(0.0, rho2) * n,
        ]
    };
    Ok(BasisQuad {
        kind: BasisKind::Helicity,
        vectors: [
            [e1[0], e1[1], e1[2], ZERO],
            [e1[0].conj(), e1[1].conj(), e1[2].conj(), ZERO],
            [re(k[0] / w), re(k[1] / w), re(k[2] / w), ZERO],
            [ZERO, ZERO, ZERO, ONE],
        ],
    })
}

/// `max_a ‖(S·k̂) e⃗_a − λ_a e⃗_a‖` with `λ` from [`HELICITY_EIGENVALUES`].
pub fn helicity_eigen_residual(wv: &WaveVector) -> Result<f64> {
    let basis = helicity_basis(wv)?;
    let n = wv.norm_k();
    let k = wv.k();
    let proj = spin1_projection([k[0] / n, k[1] / n, k[2] / n]);
    let mut worst: f64 = 0.0;
    for (a, lambda) in HELICITY_EIGENVALUES.iter().enumerate() {
        let v = &basis.vectors[a][..3];
        let sv = proj.mul_vec(v)?;
        let r: f64 = sv.iter().zip(v).map(|(p, q)| (p - q * lambda).norm_sqr()).sum();
        worst = worst.max(math::sqrt(r));
    }
    Ok(worst)
}

/// `v⁻₁, v⁻₂, v⁺₃, v⁺₄` normalised by `N = 1/sqrt(2ω̃(ω̃ + m))`.
pub fn dirac_spinors(wv: &WaveVector) -> BasisQuad {
    let [k1, k2, k3] = wv.k();
    let w = wv.omega();
    let m = wv.mass();
    let n = 1.0 / math::sqrt(2.0 * w * (w + m));
    let wm = re((w + m) * n);
    let kp = c(k1, k2) * n;
    let km = c(k1, -k2) * n;
    let k3 = re(k3 * n);
    BasisQuad {
        kind: BasisKind::DiracSpinor,
        vectors: [
            [wm, ZERO, k3, kp],
            [ZERO, wm, km, -k3],
            [k3, kp, wm, ZERO],
            [km, -k3, ZERO, wm],
        ],
    }
}

/// `v⁻₁(k), v⁻₂(k), v⁺₃(−k), v⁺₄(−k)`: the four spinors at one spatial
/// momentum `k`, the set that is orthonormal and complete.
pub fn dirac_momentum_basis(wv: &WaveVector) -> BasisQuad {
    let k = wv.k();
    let neg = WaveVector::new([-k[0], -k[1], -k[2]], wv.mass()).expect("same |k| and mass");
    let plus = dirac_spinors(wv);
    let minus = dirac_spinors(&neg);
    BasisQuad {
        kind: BasisKind::DiracSpinor,
        vectors: [plus.vectors[0], plus.vectors[1], minus.vectors[2], minus.vectors[3]],
    }
}

/// `max` over the four spinors of `‖H v⁻ − ω̃ v⁻‖` (at `k`) and
/// `‖H v⁺ + ω̃ v⁺‖` (at `−k`, the momentum of an `e^{+ikx}` wave).
pub fn spinor_energy_residual(wv: &WaveVector) -> f64 {
    let basis = dirac_spinors(wv);
    let k = wv.k();
    let h_minus = dirac_hamiltonian(k, wv.mass());
    let h_plus = dirac_hamiltonian([-k[0], -k[1], -k[2]], wv.mass());
    let w = wv.omega();
    let mut worst: f64 = 0.0;
    for (a, v) in basis.vectors.iter().enumerate() {
        let (h, e): (&ComplexMatrix, f64) = if a < 2 { (&h_minus, w) } else { (&h_plus, -w) };
        let hv = h.mul_spinor(v);
        worst = worst.max(spinor_distance(&hv, &v.map(|z| z * e)));
    }
    worst
}

pub fn cartesian_orts() -> BasisQuad {
    let (o, z) = (ONE, ZERO);
    BasisQuad {
        kind: BasisKind::Cartesian,
        vectors: [[o, z, z, z], [z, o, z, z], [z, z, o, z], [z, z, z, o]],
    }
}
