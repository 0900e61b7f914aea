//! Maps between the electromagnetic, Dirac and RCQM descriptions.
//!
//! * the eight Sallhofer columns and the first-order medium equation they solve;
//! * the eight spinorizations of the generalized Maxwell field and the
//!   real-linear operator `U` behind the first of them;
//! * the extended Foldy–Wouthuysen operator `V`, applied per plane wave.

use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{
    dirac_alpha, dirac_hamiltonian, gamma_standard, gamma_standard_matrices, gamma_tilde, PgiOperator,
};
use crate::error::{Error, Result};
use crate::linalg::{c, inner, norm, re, spinor_distance, ComplexMatrix, RealLinearOperator, Spinor, C64, I, ZERO};
use crate::math;
use crate::modes::{cartesian_orts, dirac_spinors, WaveVector};
use crate::sampling::SamplePoint;
use crate::solutions::{
    fourier_prefactor, EMField, EmJet, EmSource, Mode, ModeSum, PhaseSign, PlaneWave, SolutionKind, SolutionSpec,
};

// (linear, antilinear) coefficients of the scalar entries used by U and U⁻¹.
const C_PLUS: (C64, C64) = (C64::new(0.5, 0.0), C64::new(0.5, 0.0));
const C_MINUS: (C64, C64) = (C64::new(-0.5, 0.0), C64::new(0.5, 0.0));
const I_C_PLUS: (C64, C64) = (C64::new(0.0, 0.5), C64::new(0.0, 0.5));
const I_C_MINUS: (C64, C64) = (C64::new(0.0, -0.5), C64::new(0.0, 0.5));
const NIL: (C64, C64) = (ZERO, ZERO);

fn entrywise(rows: [[(C64, C64); 4]; 4]) -> RealLinearOperator {
    let a = ComplexMatrix::from_rows(rows.map(|r| r.map(|e| e.0)));
    let b = ComplexMatrix::from_rows(rows.map(|r| r.map(|e| e.1)));
    RealLinearOperator::new(a, b).expect("4x4 blocks")
}

/// `ψ = U𝓔` with `C± = ½(C ± 1)` entries.
pub fn u_operator() -> RealLinearOperator {
    entrywise([
        [NIL, NIL, C_PLUS, C_MINUS],
        [C_PLUS, I_C_PLUS, NIL, NIL],
        [NIL, NIL, C_MINUS, C_PLUS],
        [C_MINUS, I_C_MINUS, NIL, NIL],
    ])
}

/// `𝓔 = U⁻¹ψ`, transcribed entry by entry rather than derived from `U`.
pub fn u_inverse() -> RealLinearOperator {
    entrywise([
        [NIL, C_PLUS, NIL, C_MINUS],
        [NIL, I_C_MINUS, NIL, I_C_PLUS],
        [C_PLUS, NIL, C_MINUS, NIL],
        [C_MINUS, NIL, C_PLUS, NIL],
    ])
}

/// `max_μ ‖U⁻¹ γ^μ U − γ̃^μ‖_F`.
pub fn tilde_conjugation_residual() -> Result<f64> {
    let (u, ui) = (u_operator(), u_inverse());
    let mut worst: f64 = 0.0;
    for (g, gt) in gamma_standard().gammas().iter().zip(gamma_tilde().gammas()) {
        let conj = ui.after(&g.after(&u)?)?;
        worst = worst.max(conj.distance(gt)?);
    }
    Ok(worst)
}

/// `U 𝓔` for a generalized Maxwell spec, as a spinor field.
pub fn map_maxwell_to_dirac(spec: &SolutionSpec) -> Result<ModeSum> {
    spec.require(SolutionKind::GenMaxwell)?;
    Ok(spec.field()?.apply_real_linear(&u_operator()))
}

/// `U⁻¹ ψ` for any spinor field.
pub fn map_dirac_to_maxwell(field: &ModeSum) -> ModeSum {
    field.apply_real_linear(&u_inverse())
}

/// `ψ^I … ψ^VIII`, each built from its own column formula.
pub fn eight_spinorizations(f: &EMField) -> [Spinor; 8] {
    let [e1, e2, e3] = f.e;
    let [h1, h2, h3] = f.h;
    let (e0, h0) = (f.e0, f.h0);
    [
        [c(e3, h0), c(e1, e2), c(e0, h3), c(-h2, h1)],
        [c(-h0, e3), c(-e2, e1), c(-h3, e0), c(-h1, -h2)],
        [c(e2, e1), c(-h0, -e3), c(-h1, h2), c(h3, e0)],
        [c(-e1, e2), c(e3, -h0), c(-h2, -h1), c(-e0, h3)],
        [c(-h3, e0), c(-h1, -h2), c(-h0, e3), c(-e2, e1)],
        [c(-h1, h2), c(h3, e0), c(e2, e1), c(-h0, -e3)],
        [c(e0, h3), c(-h2, h1), c(e3, h0), c(e1, e2)],
        [c(-h2, -h1), c(-e0, h3), c(-e1, e2), c(e3, -h0)],
    ]
}

/// The eight columns `ψ¹ … ψ⁸` built from `E` and `H` via `E± = E¹ ± iE²`.
pub fn sallhofer_columns(e: [f64; 3], h: [f64; 3]) -> [Spinor; 8] {
    let ep = c(e[0], e[1]);
    let em = c(e[0], -e[1]);
    let hp = c(h[0], h[1]);
    let hm = c(h[0], -h[1]);
    let (e3, h3) = (re(e[2]), re(h[2]));
    [
        [I * e3, I * ep, h3, hp],
        [-e3, -ep, I * h3, I * hp],
        [h3, hp, I * e3, I * ep],
        [I * h3, I * hp, -e3, -ep],
        [-I * hm, I * h3, em, -e3],
        [hm, -h3, I * em, -I * e3],
        [em, -e3, -I * hm, I * h3],
        [I * em, -I * e3, hm, -h3],
    ]
}

/// Columns `ψ³ … ψ⁶` (indices `2..=5`) solve the medium equation only with
/// `ε` and `μ` interchanged.
pub fn column_requires_swap(index: usize) -> bool {
    (2..=5).contains(&index)
}

/// Coulomb medium: `Φ = −Ze²/|x|`, `ε = 1 − (Φ − m)/ω̃`, `μ = 1 − (Φ + m)/ω̃`
/// in units with `ħ = c = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumProfile {
    pub z: f64,
    pub charge: f64,
    pub mass: f64,
    pub omega_tilde: f64,
}

impl MediumProfile {
    pub fn new(z: f64, charge: f64, mass: f64, omega_tilde: f64) -> Result<Self> {
        if !(z.is_finite() && charge.is_finite() && mass.is_finite()) {
            return Err(Error::NonFinite("medium parameter"));
        }
        if !(omega_tilde.is_finite() && omega_tilde != 0.0) {
            return Err(Error::InvalidParameter("omega_tilde must be finite and nonzero"));
        }
        Ok(Self {
            z,
            charge,
            mass,
            omega_tilde,
        })
    }

    pub fn potential(&self, x: &[f64; 3]) -> Result<f64> {
        let r = math::hypot3(*x);
        if r == 0.0 {
            return Err(Error::SingularSample(r));
        }
        Ok(-self.z * self.charge * self.charge / r)
    }

    /// `(ε(x), μ(x))`.
    pub fn permeabilities(&self, x: &[f64; 3]) -> Result<(f64, f64)> {
        let phi = self.potential(x)?;
        Ok((
            1.0 - (phi - self.mass) / self.omega_tilde,
            1.0 - (phi + self.mass) / self.omega_tilde,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Medium {
    Uniform { eps: f64, mu: f64 },
    Coulomb(MediumProfile),
}

impl Medium {
    pub const VACUUM: Medium = Medium::Uniform { eps: 1.0, mu: 1.0 };

    pub fn permeabilities(&self, x: &[f64; 3]) -> Result<(f64, f64)> {
        match self {
            Medium::Uniform { eps, mu } => Ok((*eps, *mu)),
            Medium::Coulomb(p) => p.permeabilities(x),
        }
    }
}

/// Source-free plane waves in a uniform medium:
/// `E = Re(Ê e^{i(k·x − ωt)})`, `H = Re(k × Ê/(μω) e^{i(k·x − ωt)})`, `ω = |k|/√(εμ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumWaves {
    eps: f64,
    mu: f64,
    waves: Vec<([f64; 3], [C64; 3])>,
}

impl MediumWaves {
    pub fn new(eps: f64, mu: f64, waves: Vec<([f64; 3], [C64; 3])>) -> Result<Self> {
        if !(eps > 0.0 && mu > 0.0 && eps.is_finite() && mu.is_finite()) {
            return Err(Error::InvalidParameter("medium waves need positive finite eps and mu"));
        }
        for (k, e) in &waves {
            if math::hypot3(*k) == 0.0 {
                return Err(Error::ZeroWaveVector);
            }
            let along: C64 = (0..3).map(|a| e[a] * k[a]).sum();
            if along.norm() > 1e-12 * norm(e) * math::hypot3(*k) {
                return Err(Error::InvalidParameter("electric amplitude must be transverse"));
            }
        }
        Ok(Self { eps, mu, waves })
    }

    /// `n` waves with `k ∈ [−2, 2]³` and a random transverse `Ê`.
    pub fn random<R: Rng + ?Sized>(eps: f64, mu: f64, n: usize, rng: &mut R) -> Result<Self> {
        let waves = (0..n)
            .map(|_| {
                let k = loop {
                    let k = [0; 3].map(|_| rng.gen_range(-2.0..2.0));
                    if math::hypot3(k) > 1e-2 {
                        break k;
                    }
                };
                let raw: [C64; 3] = [0; 3].map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                let kk = math::dot3(k, k);
                let along: C64 = (0..3).map(|a| raw[a] * k[a]).sum::<C64>() / kk;
                (k, core::array::from_fn(|a| raw[a] - along * k[a]))
            })
            .collect();
        Self::new(eps, mu, waves)
    }

    pub fn omega(&self, k: [f64; 3]) -> f64 {
        math::hypot3(k) / math::sqrt(self.eps * self.mu)
    }
}

impl EmSource for MediumWaves {
    fn em_jet(&self, t: f64, x: &[f64; 3]) -> EmJet {
        let mut jet = EmJet {
            value: EMField::default(),
            d: [EMField::default(); 4],
        };
        for (k, e_hat) in &self.waves {
            let w = self.omega(*k);
            let h_hat: [C64; 3] = [
                (e_hat[2] * k[1] - e_hat[1] * k[2]) / (self.mu * w),
                (e_hat[0] * k[2] - e_hat[2] * k[0]) / (self.mu * w),
                (e_hat[1] * k[0] - e_hat[0] * k[1]) / (self.mu * w),
            ];
            let ph = math::cis(math::dot3(*k, *x) - w * t);
            let factors = [c(0.0, -w), c(0.0, k[0]), c(0.0, k[1]), c(0.0, k[2])];
            for a in 0..3 {
                let (ez, hz) = (e_hat[a] * ph, h_hat[a] * ph);
                jet.value.e[a] += ez.re;
                jet.value.h[a] += hz.re;
                for (mu, f) in factors.iter().enumerate() {
                    jet.d[mu].e[a] += (ez * f).re;
                    jet.d[mu].h[a] += (hz * f).re;
                }
            }
        }
        jet
    }
}

fn column_of(f: &EMField, index: usize) -> Spinor {
    sallhofer_columns(f.e, f.h)[index]
}

/// `Σ_j α_j ∂_j ψ − D ∂_t ψ` at one jet, for column `index` (`0..8`), where
/// `D = diag(ε, ε, μ, μ)`, or `diag(μ, μ, ε, ε)` when `swap` is set.
pub fn sallhofer_residual_vector(jet: &EmJet, index: usize, eps: f64, mu: f64, swap: bool) -> Spinor {
    let alpha = dirac_alpha();
    let (upper, lower) = if swap { (mu, eps) } else { (eps, mu) };
    let dt = column_of(&jet.d[0], index);
    let mut r = [-dt[0] * upper, -dt[1] * upper, -dt[2] * lower, -dt[3] * lower];
    for j in 0..3 {
        let aj = alpha[j].mul_spinor(&column_of(&jet.d[j + 1], index));
        for a in 0..4 {
            r[a] += aj[a];
        }
    }
    r
}

/// Worst residual norm of the medium equation over `points`. Rejects samples
/// at the Coulomb singularity.
pub fn sallhofer_residual(
    source: &impl EmSource,
    medium: &Medium,
    index: usize,
    swap: bool,
    points: &[SamplePoint],
) -> Result<f64> {
    if index >= 8 {
        return Err(Error::InvalidParameter("column index must be below 8"));
    }
    let mut worst: f64 = 0.0;
    for p in points {
        let (eps, mu) = medium.permeabilities(&p.x)?;
        let r = sallhofer_residual_vector(&source.em_jet(p.t, &p.x), index, eps, mu, swap);
        worst = worst.max(norm(&r));
    }
    Ok(worst)
}

fn amplitude_symbol(k: [f64; 3], omega: f64, upper: f64, lower: f64) -> ComplexMatrix {
    let alpha = dirac_alpha();
    let mut s = ComplexMatrix::from_diag(&[upper, upper, lower, lower].map(|d| c(0.0, omega * d)));
    for j in 0..3 {
        s = &s + &alpha[j].scale(c(0.0, k[j]));
    }
    s
}

/// `max_x ‖S_em(k, x) − S_D(k, x)‖_F` where `S_em` is the electromagnetic
/// amplitude symbol with `ε(x), μ(x)` substituted and `S_D` is the Dirac
/// amplitude symbol in the Coulomb field, each evaluated at wave vector `k`.
pub fn medium_amplitude_equivalence(profile: &MediumProfile, k: [f64; 3], points: &[[f64; 3]]) -> Result<f64> {
    let w = profile.omega_tilde;
    let mut worst: f64 = 0.0;
    for x in points {
        let (eps, mu) = profile.permeabilities(x)?;
        let em = amplitude_symbol(k, w, eps, mu);
        let phi = -profile.z * profile.charge * profile.charge / math::hypot3(*x);
        let m = profile.mass;
        let dirac = amplitude_symbol(k, w, 1.0 - (phi - m) / w, 1.0 - (phi + m) / w);
        worst = worst.max(em.distance(&dirac)?);
    }
    Ok(worst)
}

/// Exhaustive-search assignment of a column family to the PGI operators.
#[derive(Debug, Clone, PartialEq)]
pub struct PgiMatch {
    pub column: usize,
    pub operator: PgiOperator,
    /// Overall `±1` between `operator(first)` and the column.
    pub sign: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PgiMatching {
    pub matches: Vec<PgiMatch>,
    /// Columns with no operator within tolerance.
    pub unmatched: Vec<usize>,
    /// Columns with more than one operator within tolerance.
    pub ambiguous: Vec<usize>,
}

impl PgiMatching {
    /// Every column matched by exactly one operator, and no operator used twice.
    pub fn is_bijection(&self) -> bool {
        if !self.unmatched.is_empty() || !self.ambiguous.is_empty() || self.matches.len() != 8 {
            return false;
        }
        let mut used = [false; 8];
        for m in &self.matches {
            let idx = PgiOperator::ALL
                .iter()
                .position(|o| *o == m.operator)
                .expect("known operator");
            if used[idx] {
                return false;
            }
            used[idx] = true;
        }
        true
    }

    pub fn max_residual(&self) -> f64 {
        self.matches.iter().map(|m| m.residual).fold(0.0, f64::max)
    }
}

/// For each of the eight columns produced by `columns`, find the operators
/// `O` and signs `σ` with `σ O(column₀) = column_K` on every field in `fields`
/// to within `tol` (relative to the column norm).
pub fn match_pgi(
    columns: impl Fn(&EMField) -> [Spinor; 8],
    fields: &[EMField],
    ops: &[(PgiOperator, RealLinearOperator)],
    tol: f64,
) -> Result<PgiMatching> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let sets: Vec<[Spinor; 8]> = fields.iter().map(&columns).collect();
    let mut out = PgiMatching::default();
    for k in 0..8 {
        let mut found: Vec<PgiMatch> = Vec::new();
        for (op, rl) in ops {
            for sign in [1.0, -1.0] {
                let mut worst: f64 = 0.0;
                for set in &sets {
                    let image = rl.apply_spinor(&set[0]).map(|z| z * sign);
                    let scale = norm(&set[k]).max(1.0);
                    worst = worst.max(spinor_distance(&image, &set[k]) / scale);
                }
                if worst <= tol {
                    found.push(PgiMatch {
                        column: k,
                        operator: *op,
                        sign,
                        residual: worst,
                    });
                }
            }
        }
        match found.len() {
            0 => out.unmatched.push(k),
            1 => out.matches.push(found.remove(0)),
            _ => {
                out.ambiguous.push(k);
                out.matches.push(found.remove(0));
            }
        }
    }
    Ok(out)
}

/// Random field strengths with entries in `[−1, 1]`; the scalar pair is zero
/// unless `with_scalars`.
pub fn random_em_fields<R: Rng + ?Sized>(n: usize, with_scalars: bool, rng: &mut R) -> Vec<EMField> {
    (0..n)
        .map(|_| {
            let mut u = || rng.gen_range(-1.0..1.0);
            let e = [u(), u(), u()];
            let h = [u(), u(), u()];
            let (e0, h0) = if with_scalars { (u(), u()) } else { (0.0, 0.0) };
            EMField { e, h, e0, h0 }
        })
        .collect()
}

fn check_mass(m: f64) -> Result<()> {
    if !m.is_finite() || m < 0.0 {
        return Err(Error::InvalidMass(m));
    }
    if m == 0.0 {
        return Err(Error::MasslessUnsupported);
    }
    Ok(())
}

/// `diag(1, 1, C, C)`: the upper half keeps its phase, the conjugated lower
/// half flips it.
fn conj_lower(field: &ModeSum) -> ModeSum {
    let mut waves = Vec::with_capacity(field.waves.len());
    for w in &field.waves {
        let v = w.vector;
        if v[0] != ZERO || v[1] != ZERO {
            waves.push(w.with_vector([v[0], v[1], ZERO, ZERO]));
        }
        if v[2] != ZERO || v[3] != ZERO {
            let wc = w.conj();
            waves.push(wc.with_vector([ZERO, ZERO, wc.vector[2], wc.vector[3]]));
        }
    }
    ModeSum::new(waves)
}

/// `(±iγ^ℓ∂_ℓ + ω̂ + m)/√(2ω̂(ω̂ + m))` on one wave; `iγ^ℓ∂_ℓ` becomes
/// `s γ^ℓ k_ℓ` for phase sign `s`, and `ω̂ = √(k² + m²)`.
fn fw_factor(field: &ModeSum, m: f64, sgn: f64) -> ModeSum {
    let g = gamma_standard_matrices();
    field.map_vectors(|w| {
        let wh = math::omega(w.k, m);
        let n = 1.0 / math::sqrt(2.0 * wh * (wh + m));
        let s = sgn * w.sign.value();
        let mut out = w.vector.map(|z| z * ((wh + m) * n));
        for l in 0..3 {
            let gv = g[l + 1].mul_spinor(&w.vector);
            for a in 0..4 {
                out[a] += gv[a] * (s * w.k[l] * n);
            }
        }
        out
    })
}

/// `V f`, exact per plane wave. Requires `m > 0`.
pub fn apply_v_field(field: &ModeSum, m: f64) -> Result<ModeSum> {
    check_mass(m)?;
    Ok(fw_factor(&conj_lower(field), m, 1.0))
}

/// `V⁻¹ ψ`, exact per plane wave. Requires `m > 0`.
pub fn apply_v_inverse_field(field: &ModeSum, m: f64) -> Result<ModeSum> {
    check_mass(m)?;
    Ok(conj_lower(&fw_factor(field, m, -1.0)))
}

fn single_mode_field(kind: SolutionKind, mass: f64, mode: Mode) -> Result<ModeSum> {
    SolutionSpec::new(kind, mass, alloc::vec![mode])?.field()
}

// Amplitude of `mode.branch` in a single-mode image: the sum of the projections
// of every wave carrying the expected phase sign. Waves of the other sign come
// only from rounding in the conjugated half.
fn read_amplitude(image: &ModeSum, kind: SolutionKind, mode: &Mode, mass: f64) -> Result<C64> {
    let b = usize::from(mode.branch - 1);
    let (basis, sign) = match kind {
        SolutionKind::Sf => (cartesian_orts().vectors[b], PhaseSign::Minus),
        _ => {
            let v = dirac_spinors(&WaveVector::new(mode.k, mass)?).vectors[b];
            (v, if b < 2 { PhaseSign::Minus } else { PhaseSign::Plus })
        }
    };
    let proj: C64 = image
        .waves
        .iter()
        .filter(|w| w.sign == sign)
        .map(|w| inner(&basis, &w.vector))
        .sum::<C64>()
        / fourier_prefactor();
    Ok(if sign == PhaseSign::Plus { proj.conj() } else { proj })
}

/// Maps an SF spec to the Dirac spec whose field is `V f`, reading each
/// amplitude back off the Dirac spinor basis.
pub fn apply_v(spec: &SolutionSpec) -> Result<SolutionSpec> {
    spec.require(SolutionKind::Sf)?;
    let m = spec.mass();
    check_mass(m)?;
    let mut modes = Vec::with_capacity(spec.modes().len());
    for mode in spec.modes() {
        let image = apply_v_field(&single_mode_field(SolutionKind::Sf, m, *mode)?, m)?;
        let amplitude = read_amplitude(&image, SolutionKind::Dirac, mode, m)?;
        modes.push(Mode { amplitude, ..*mode });
    }
    SolutionSpec::new(SolutionKind::Dirac, m, modes)
}

/// Maps a Dirac spec to the SF spec whose field is `V⁻¹ ψ`.
pub fn apply_v_inv(spec: &SolutionSpec) -> Result<SolutionSpec> {
    spec.require(SolutionKind::Dirac)?;
    let m = spec.mass();
    check_mass(m)?;
    let mut modes = Vec::with_capacity(spec.modes().len());
    for mode in spec.modes() {
        let image = apply_v_inverse_field(&single_mode_field(SolutionKind::Dirac, m, *mode)?, m)?;
        let amplitude = read_amplitude(&image, SolutionKind::Sf, mode, m)?;
        modes.push(Mode { amplitude, ..*mode });
    }
    SolutionSpec::new(SolutionKind::Sf, m, modes)
}

/// `√(Σ|a|²)` over the modes of a spec.
pub fn amplitude_norm(spec: &SolutionSpec) -> f64 {
    math::sqrt(spec.modes().iter().map(|m| m.amplitude.norm_sqr()).sum())
}

/// `max_p ‖V(∂₀ + iω̂)V⁻¹ψ − (∂₀ + i(α·p̂ + βm))ψ‖`, where the left side uses
/// mass `m_lhs` and the right side `m_rhs`.
pub fn intertwining_difference(field: &ModeSum, m_lhs: f64, m_rhs: f64, points: &[SamplePoint]) -> Result<f64> {
    check_mass(m_lhs)?;
    check_mass(m_rhs)?;
    let inner_field = apply_v_inverse_field(field, m_lhs)?;
    let driven = inner_field.map_vectors(|w| {
        let f = w.dt_factor() + I * math::omega(w.k, m_lhs);
        w.vector.map(|z| z * f)
    });
    let lhs = apply_v_field(&driven, m_lhs)?;
    let rhs = field.map_vectors(|w| {
        let hv = dirac_hamiltonian(w.momentum(), m_rhs).mul_spinor(&w.vector);
        let dt = w.dt_factor();
        core::array::from_fn(|a| w.vector[a] * dt + I * hv[a])
    });
    Ok(lhs.max_distance(&rhs, points))
}

/// Worst [`intertwining_difference`] over `trials` random single waves with
/// arbitrary spinor, frequency and phase sign.
pub fn check_intertwining_identity<R: Rng + ?Sized>(trials: usize, m: f64, rng: &mut R) -> Result<f64> {
    check_mass(m)?;
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let field = random_single_wave(rng);
        let points = crate::sampling::sample_points(4, rng);
        worst = worst.max(intertwining_difference(&field, m, m, &points)?);
    }
    Ok(worst)
}

/// One plane wave with `k ∈ [−2, 2]³`, `ω ∈ [0.1, 3]`, random sign and a
/// spinor in the unit box.
pub fn random_single_wave<R: Rng + ?Sized>(rng: &mut R) -> ModeSum {
    let k = [0; 3].map(|_| rng.gen_range(-2.0..2.0));
    let omega = rng.gen_range(0.1..3.0);
    let sign = if rng.gen_bool(0.5) {
        PhaseSign::Minus
    } else {
        PhaseSign::Plus
    };
    let vector = [0; 4].map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    ModeSum::new(alloc::vec![PlaneWave { k, omega, sign, vector }])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{pgi_operators, DIRAC_HERMITICITY};
    use crate::linalg::ONE;
    use crate::sampling::sample_points;
    use crate::solutions::{eval_dirac, residual_dirac, residual_gen_maxwell};
    use crate::test_util::rng;
    use alloc::vec;

    fn pts(n: usize, seed: u64) -> Vec<SamplePoint> {
        sample_points(n, &mut rng(seed))
    }

    fn e3_only() -> EMField {
        EMField {
            e: [0.0, 0.0, 1.0],
            ..EMField::default()
        }
    }

    #[test]
    fn u_on_e3() {
        let out = u_operator().apply_spinor(&e3_only().to_complex());
        assert_eq!(out, [ONE, ZERO, ZERO, ZERO]);
    }

    #[test]
    fn u_matches_first_spinorization() {
        for f in random_em_fields(20, true, &mut rng(51)) {
            let via_u = u_operator().apply_spinor(&f.to_complex());
            assert!(spinor_distance(&via_u, &eight_spinorizations(&f)[0]) < 1e-15);
        }
    }

    #[test]
    fn u_is_unitary_with_transcribed_inverse() {
        let (u, ui) = (u_operator(), u_inverse());
        let id = RealLinearOperator::identity(4);
        assert!(u.after(&ui).unwrap().distance(&id).unwrap() < 1e-14);
        assert!(ui.after(&u).unwrap().distance(&id).unwrap() < 1e-14);
        assert!(u.adjoint().distance(&ui).unwrap() < 1e-15);
        assert!(u.is_unitary(1e-13).unwrap());
    }

    #[test]
    fn tilde_set_is_u_conjugate_of_standard() {
        assert!(tilde_conjugation_residual().unwrap() <= 1e-13);
        assert!(gamma_tilde().verify(DIRAC_HERMITICITY).unwrap().max() <= 1e-14);
    }

    #[test]
    fn maxwell_to_dirac_and_back() {
        let mut r = rng(52);
        let p = pts(20, 53);
        for _ in 0..5 {
            let spec = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 5, &mut r).unwrap();
            let cale = spec.field().unwrap();
            let psi = map_maxwell_to_dirac(&spec).unwrap();
            assert!(residual_dirac(&psi, 0.0, &p) <= 1e-10);
            let back = map_dirac_to_maxwell(&psi);
            assert!(back.max_distance(&cale, &p) <= 1e-13);
        }
        let zero = SolutionSpec::empty(SolutionKind::GenMaxwell, 0.0).unwrap();
        let psi = map_maxwell_to_dirac(&zero).unwrap();
        assert_eq!(psi.eval(0.3, &[1.0, 0.0, 0.0]), [ZERO; 4]);
        assert_eq!(residual_dirac(&psi, 0.0, &p), 0.0);
    }

    #[test]
    fn dirac_solutions_map_to_generalized_maxwell() {
        let mut r = rng(54);
        let p = pts(20, 55);
        for _ in 0..5 {
            let spec = SolutionSpec::random(SolutionKind::Dirac, 0.0, 5, &mut r).unwrap();
            let cale = map_dirac_to_maxwell(&spec.field().unwrap());
            assert!(residual_gen_maxwell(&cale, &p).max() <= 1e-10);
        }
    }

    #[test]
    fn map_is_additive() {
        let mut r = rng(56);
        let a = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 3, &mut r).unwrap();
        let b = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 4, &mut r).unwrap();
        let sum = map_maxwell_to_dirac(&a.superpose(&b).unwrap()).unwrap();
        let parts = map_maxwell_to_dirac(&a)
            .unwrap()
            .add(&map_maxwell_to_dirac(&b).unwrap());
        assert!(sum.max_distance(&parts, &pts(10, 57)) <= 1e-13);
    }

    #[test]
    fn spinorization_examples() {
        let s = eight_spinorizations(&e3_only());
        assert_eq!(s[0], [ONE, ZERO, ZERO, ZERO]);
        assert_eq!(eight_spinorizations(&EMField::default()), [[ZERO; 4]; 8]);
        let cols = sallhofer_columns([0.0, 0.0, 1.0], [0.0; 3]);
        assert_eq!(cols[0], [I, ZERO, ZERO, ZERO]);
        assert_eq!(sallhofer_columns([0.0; 3], [0.0; 3]), [[ZERO; 4]; 8]);
        let flags: Vec<bool> = (0..8).map(column_requires_swap).collect();
        assert_eq!(flags, [false, false, true, true, true, true, false, false]);
    }

    #[test]
    fn spinorizations_are_pgi_images() {
        let fields = random_em_fields(10, true, &mut rng(58));
        let ops = pgi_operators(&gamma_standard()).unwrap();
        let m = match_pgi(eight_spinorizations, &fields, &ops, 1e-13).unwrap();
        assert!(m.is_bijection(), "{m:?}");
        use PgiOperator::*;
        let expected = [
            (Identity, 1.0),
            (ImaginaryUnit, 1.0),
            (Gamma2Gamma4C, -1.0),
            (IGamma2Gamma4C, -1.0),
            (IGamma4, 1.0),
            (Gamma2C, 1.0),
            (Gamma4, 1.0),
            (IGamma2C, 1.0),
        ];
        for (got, want) in m.matches.iter().zip(expected) {
            assert_eq!((got.operator, got.sign), want, "column {}", got.column);
        }
    }

    #[test]
    fn sallhofer_columns_are_pgi_images() {
        let fields = random_em_fields(10, false, &mut rng(59));
        let ops = pgi_operators(&gamma_standard()).unwrap();
        let m = match_pgi(|f| sallhofer_columns(f.e, f.h), &fields, &ops, 1e-13).unwrap();
        assert!(m.is_bijection(), "{m:?}");
        use PgiOperator::*;
        let expected = [
            (Identity, 1.0),
            (ImaginaryUnit, 1.0),
            (Gamma4, 1.0),
            (IGamma4, 1.0),
            (Gamma2C, 1.0),
            (IGamma2C, 1.0),
            (Gamma2Gamma4C, -1.0),
            (IGamma2Gamma4C, -1.0),
        ];
        for (got, want) in m.matches.iter().zip(expected) {
            assert_eq!((got.operator, got.sign), want, "column {}", got.column);
        }
    }

    #[test]
    fn columns_solve_vacuum_equation() {
        let waves = MediumWaves::random(1.0, 1.0, 5, &mut rng(60)).unwrap();
        let p = pts(20, 61);
        for k in 0..8 {
            assert!(sallhofer_residual(&waves, &Medium::VACUUM, k, false, &p).unwrap() <= 1e-10);
        }
        let none = MediumWaves::new(1.0, 1.0, vec![]).unwrap();
        assert_eq!(sallhofer_residual(&none, &Medium::VACUUM, 0, false, &p).unwrap(), 0.0);
    }

    #[test]
    fn medium_columns_need_the_swap() {
        let (eps, mu) = (2.0, 0.5);
        let medium = Medium::Uniform { eps, mu };
        let waves = MediumWaves::random(eps, mu, 4, &mut rng(62)).unwrap();
        let p = pts(20, 63);
        for k in 0..8 {
            let plain = sallhofer_residual(&waves, &medium, k, false, &p).unwrap();
            let swapped = sallhofer_residual(&waves, &medium, k, true, &p).unwrap();
            if column_requires_swap(k) {
                assert!(plain > 1e-2 && swapped <= 1e-10, "column {k}: {plain} {swapped}");
            } else {
                assert!(plain <= 1e-10 && swapped > 1e-2, "column {k}: {plain} {swapped}");
            }
        }
    }

    #[test]
    fn first_column_residual_splits_into_maxwell_equations() {
        let mut r = rng(64);
        let mut u = || r.gen_range(-1.0..1.0);
        let mut f = || EMField {
            e: [u(), u(), u()],
            h: [u(), u(), u()],
            e0: 0.0,
            h0: 0.0,
        };
        let jet = EmJet {
            value: f(),
            d: [f(), f(), f(), f()],
        };
        let (eps, mu) = (1.7, 0.6);
        let r = sallhofer_residual_vector(&jet, 0, eps, mu, false);
        let d = &jet.d;
        let g = |j: usize| &d[j + 1];
        let curl = |p: fn(&EMField) -> [f64; 3]| {
            [
                p(g(1))[2] - p(g(2))[1],
                p(g(2))[0] - p(g(0))[2],
                p(g(0))[1] - p(g(1))[0],
            ]
        };
        let (ch, ce) = (curl(|f| f.h), curl(|f| f.e));
        let div_e = g(0).e[0] + g(1).e[1] + g(2).e[2];
        let div_h = g(0).h[0] + g(1).h[1] + g(2).h[2];
        let ampere: [f64; 3] = core::array::from_fn(|a| ch[a] - eps * d[0].e[a]);
        let faraday: [f64; 3] = core::array::from_fn(|a| ce[a] + mu * d[0].h[a]);
        let expected = [
            c(div_h, ampere[2]),
            c(-ampere[1], ampere[0]),
            c(-faraday[2], div_e),
            c(-faraday[0], -faraday[1]),
        ];
        assert!(spinor_distance(&r, &expected) < 1e-14);
    }

    #[test]
    fn coulomb_medium() {
        let p = MediumProfile::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(p.permeabilities(&[0.0; 3]), Err(Error::SingularSample(0.0)));
        let free = MediumProfile::new(0.0, 1.0, 0.4, 2.0).unwrap();
        assert_eq!(free.permeabilities(&[1.0, 0.0, 0.0]).unwrap(), (1.2, 0.8));
        let massless = MediumProfile::new(1.0, 0.5, 0.0, 2.0).unwrap();
        let (e, m) = massless.permeabilities(&[0.3, 0.1, 0.2]).unwrap();
        assert_eq!(e, m);
        let waves = MediumWaves::random(1.0, 1.0, 1, &mut rng(65)).unwrap();
        let origin = [SamplePoint::new(0.0, [0.0; 3])];
        assert_eq!(
            sallhofer_residual(&waves, &Medium::Coulomb(p), 0, false, &origin),
            Err(Error::SingularSample(0.0))
        );
    }

    #[test]
    fn medium_symbols_agree() {
        let p = MediumProfile::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let mut r = rng(66);
        let xs: Vec<[f64; 3]> = (0..100)
            .map(|_| loop {
                let x = [0; 3].map(|_| r.gen_range(-2.0..2.0));
                if math::hypot3(x) >= 1e-3 {
                    break x;
                }
            })
            .collect();
        assert!(medium_amplitude_equivalence(&p, [0.3, -0.7, 1.1], &xs).unwrap() <= 1e-14);
    }

    #[test]
    fn v_rest_frame_mode() {
        let spec = SolutionSpec::new(
            SolutionKind::Sf,
            1.0,
            vec![Mode {
                k: [0.0; 3],
                branch: 1,
                amplitude: ONE,
            }],
        )
        .unwrap();
        let out = apply_v_field(&spec.field().unwrap(), 1.0).unwrap();
        assert_eq!(out.waves.len(), 1);
        let w = out.waves[0];
        assert_eq!(w.sign, PhaseSign::Minus);
        assert_eq!(w.omega, 1.0);
        assert!(spinor_distance(&w.vector, &[re(fourier_prefactor()), ZERO, ZERO, ZERO]) < 1e-16);
    }

    #[test]
    fn v_rejects_zero_mass() {
        let spec = SolutionSpec::new(SolutionKind::Sf, 0.0, vec![]).unwrap();
        assert_eq!(apply_v(&spec), Err(Error::MasslessUnsupported));
        assert_eq!(apply_v_field(&ModeSum::default(), 0.0), Err(Error::MasslessUnsupported));
    }

    #[test]
    fn v_maps_sf_solutions_onto_dirac_solutions() {
        let mut r = rng(67);
        let p = pts(20, 68);
        for _ in 0..5 {
            let sf = SolutionSpec::random(SolutionKind::Sf, 1.0, 8, &mut r).unwrap();
            let image = apply_v_field(&sf.field().unwrap(), 1.0).unwrap();
            let same_amplitudes = sf.with_kind(SolutionKind::Dirac).unwrap();
            for q in &p {
                let direct = eval_dirac(&same_amplitudes, q.t, &q.x).unwrap();
                assert!(spinor_distance(&image.eval(q.t, &q.x), &direct) <= 1e-11);
            }
            let dirac = apply_v(&sf).unwrap();
            for (a, b) in dirac.modes().iter().zip(sf.modes()) {
                assert!((a.amplitude - b.amplitude).norm() <= 1e-13);
            }
            assert!((amplitude_norm(&dirac) - amplitude_norm(&sf)).abs() <= 1e-13);
            let back = apply_v_inv(&dirac).unwrap();
            for (a, b) in back.modes().iter().zip(sf.modes()) {
                assert!((a.amplitude - b.amplitude).norm() <= 1e-13);
            }
        }
    }

    #[test]
    fn v_inverse_round_trips_arbitrary_fields() {
        let mut r = rng(69);
        let p = pts(10, 70);
        for _ in 0..20 {
            let f = random_single_wave(&mut r);
            let m = r.gen_range(0.2..2.0);
            let there = apply_v_field(&f, m).unwrap();
            let back = apply_v_inverse_field(&there, m).unwrap();
            assert!(back.max_distance(&f, &p) <= 1e-13);
            let other = apply_v_field(&apply_v_inverse_field(&f, m).unwrap(), m).unwrap();
            assert!(other.max_distance(&f, &p) <= 1e-13);
        }
    }

    #[test]
    fn intertwining_identity_holds_and_is_mass_sensitive() {
        let mut r = rng(71);
        assert!(check_intertwining_identity(50, 1.0, &mut r).unwrap() <= 1e-11);
        let rest = SolutionSpec::new(
            SolutionKind::Sf,
            1.0,
            vec![Mode {
                k: [0.0; 3],
                branch: 1,
                amplitude: ONE,
            }],
        )
        .unwrap()
        .field()
        .unwrap();
        assert!(intertwining_difference(&rest, 1.0, 1.0, &pts(5, 72)).unwrap() <= 1e-15);

        let f = random_single_wave(&mut r);
        let p = pts(5, 73);
        let d1 = intertwining_difference(&f, 1.0, 1.0 + 1e-3, &p).unwrap();
        let d2 = intertwining_difference(&f, 1.0, 1.0 + 2e-3, &p).unwrap();
        assert!(d1 > 1e-6);
        assert!((d2 / d1 - 2.0).abs() < 1e-6);
    }
}
