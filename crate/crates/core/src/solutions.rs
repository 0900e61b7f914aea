//! General solutions as finite plane-wave sums, and residual evaluators for
//! every equation form the correspondences are stated in.
//!
//! A [`PlaneWave`] carries its own frequency and phase sign, so a
//! [`ModeSum`] can hold fields that are not solutions (perturbed dispersion,
//! images under conjugation) and the residual evaluators measure exactly how
//! far off they are. Derivatives are analytic per wave.

use alloc::vec::Vec;

use rand::Rng;

use crate::algebra::{dirac_alpha, gamma_standard_matrices, spin1_generators, METRIC};
use crate::error::{Error, Result};
use crate::linalg::{c, norm, re, spinor_add, ComplexMatrix, RealLinearOperator, Spinor, C64, I, ZERO};
use crate::math;
use crate::modes::{cartesian_orts, dirac_spinors, helicity_basis, WaveVector};
use crate::sampling::SamplePoint;

/// `(2π)^{−3/2}`.
pub fn fourier_prefactor() -> f64 {
    let two_pi = 2.0 * core::f64::consts::PI;
    1.0 / (two_pi * math::sqrt(two_pi))
}

/// `sqrt(2ω̃ / (2π)³)` used by the electromagnetic expansion.
pub fn em_prefactor(omega: f64) -> f64 {
    math::sqrt(2.0 * omega) * fourier_prefactor()
}

/// Sign in the phase `exp(±i(ω t − k·x))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseSign {
    /// `e^{−ikx}`: positive frequency.
    Minus,
    /// `e^{+ikx}`.
    Plus,
}

impl PhaseSign {
    #[inline]
    pub fn value(self) -> f64 {
        match self {
            PhaseSign::Minus => -1.0,
            PhaseSign::Plus => 1.0,
        }
    }

    #[inline]
    pub fn flip(self) -> Self {
        match self {
            PhaseSign::Minus => PhaseSign::Plus,
            PhaseSign::Plus => PhaseSign::Minus,
        }
    }
}

/// `vector · exp(s i (ω t − k·x))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub k: [f64; 3],
    pub omega: f64,
    pub sign: PhaseSign,
    pub vector: Spinor,
}

impl PlaneWave {
    #[inline]
    pub fn phase(&self, t: f64, x: &[f64; 3]) -> C64 {
        math::cis(self.sign.value() * (self.omega * t - math::dot3(self.k, *x)))
    }

    /// Eigenvalue of `∂₀`.
    #[inline]
    pub fn dt_factor(&self) -> C64 {
        c(0.0, self.sign.value() * self.omega)
    }

    /// Eigenvalue of `∂_j` (spatial, `j = 0..3`).
    #[inline]
    pub fn dx_factor(&self, j: usize) -> C64 {
        c(0.0, -self.sign.value() * self.k[j])
    }

    /// Wave vector seen by `p̂ = −i∇`, i.e. `−s k`.
    #[inline]
    pub fn momentum(&self) -> [f64; 3] {
        let s = -self.sign.value();
        [s * self.k[0], s * self.k[1], s * self.k[2]]
    }

    /// The complex conjugate wave.
    pub fn conj(&self) -> Self {
        Self {
            sign: self.sign.flip(),
            vector: self.vector.map(|z| z.conj()),
            ..*self
        }
    }

    pub fn with_vector(&self, vector: Spinor) -> Self {
        Self { vector, ..*self }
    }
}

/// Value and the four derivatives `∂_μ`, `μ = 0..4`, at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Spinor,
    pub d: [Spinor; 4],
}

/// A finite superposition of plane waves.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ModeSum {
    pub waves: Vec<PlaneWave>,
}

impl ModeSum {
    pub fn new(waves: Vec<PlaneWave>) -> Self {
        Self { waves }
    }

    pub fn is_empty(&self) -> bool {
        self.waves.is_empty()
    }

    pub fn eval(&self, t: f64, x: &[f64; 3]) -> Spinor {
        self.waves.iter().fold([ZERO; 4], |acc, w| {
            let ph = w.phase(t, x);
            spinor_add(&acc, &w.vector.map(|z| z * ph))
        })
    }

    pub fn jet(&self, t: f64, x: &[f64; 3]) -> Jet {
        let mut jet = Jet {
            value: [ZERO; 4],
            d: [[ZERO; 4]; 4],
        };
        for w in &self.waves {
            let ph = w.phase(t, x);
            let v = w.vector.map(|z| z * ph);
            jet.value = spinor_add(&jet.value, &v);
            jet.d[0] = spinor_add(&jet.d[0], &v.map(|z| z * w.dt_factor()));
            for j in 0..3 {
                jet.d[j + 1] = spinor_add(&jet.d[j + 1], &v.map(|z| z * w.dx_factor(j)));
            }
        }
        jet
    }

    pub fn map_vectors(&self, f: impl Fn(&PlaneWave) -> Spinor) -> Self {
        Self::new(self.waves.iter().map(|w| w.with_vector(f(w))).collect())
    }

    pub fn apply_linear(&self, m: &ComplexMatrix) -> Self {
        self.map_vectors(|w| m.mul_spinor(&w.vector))
    }

    /// Pointwise `x -> A x + B conj(x)`; the antilinear part conjugates each
    /// wave, flipping its phase sign.
    pub fn apply_real_linear(&self, op: &RealLinearOperator) -> Self {
        let mut waves = Vec::with_capacity(2 * self.waves.len());
        let lin = !op.is_antilinear();
        let anti = !op.is_linear();
        for w in &self.waves {
            if lin {
                waves.push(w.with_vector(op.linear_part().mul_spinor(&w.vector)));
            }
            if anti {
                let wc = w.conj();
                waves.push(wc.with_vector(op.antilinear_part().mul_spinor(&wc.vector)));
            }
        }
        Self::new(waves)
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map_vectors(|w| w.vector.map(|z| z * s))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut waves = self.waves.clone();
        waves.extend_from_slice(&other.waves);
        Self::new(waves)
    }

    pub fn time_derivative(&self) -> Self {
        self.map_vectors(|w| w.vector.map(|z| z * w.dt_factor()))
    }

    /// Shift in time: the field `g(t, x) = f(t + dt, x)`.
    pub fn shifted(&self, dt: f64) -> Self {
        self.map_vectors(|w| {
            let ph = math::cis(w.sign.value() * w.omega * dt);
            w.vector.map(|z| z * ph)
        })
    }

    /// `Σ ‖v‖`.
    pub fn amplitude_scale(&self) -> f64 {
        self.waves.iter().map(|w| norm(&w.vector)).sum()
    }

    /// `Σ ‖v‖ (1 + ω + |k|)`: bounds every first-order term in the residuals.
    pub fn derivative_scale(&self) -> f64 {
        self.waves
            .iter()
            .map(|w| norm(&w.vector) * (1.0 + w.omega + math::hypot3(w.k)))
            .sum()
    }

    /// `max` over points of the pointwise distance to `other`.
    pub fn max_distance(&self, other: &Self, points: &[SamplePoint]) -> f64 {
        points
            .iter()
            .map(|p| {
                let a = self.eval(p.t, &p.x);
                let b = other.eval(p.t, &p.x);
                crate::linalg::spinor_distance(&a, &b)
            })
            .fold(0.0, f64::max)
    }

    /// `max` over points of the pointwise norm.
    pub fn max_norm(&self, points: &[SamplePoint]) -> f64 {
        points.iter().map(|p| norm(&self.eval(p.t, &p.x))).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolutionKind {
    /// Schrödinger–Foldy (RCQM) field.
    Sf,
    Dirac,
    /// Generalized Maxwell field in the `𝓔` packing.
    GenMaxwell,
}

impl SolutionKind {
    pub fn name(self) -> &'static str {
        match self {
            SolutionKind::Sf => "SF",
            SolutionKind::Dirac => "DIRAC",
            SolutionKind::GenMaxwell => "GENMAXWELL",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "SF" => Some(SolutionKind::Sf),
            "DIRAC" => Some(SolutionKind::Dirac),
            "GENMAXWELL" => Some(SolutionKind::GenMaxwell),
            _ => None,
        }
    }
}

/// One term of the discretised momentum integral. Quadrature weights live in
/// the amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: [f64; 3],
    /// `1..=4`: `a¹..a⁴` for SF/DIRAC, `c¹..c⁴` for GENMAXWELL.
    pub branch: u8,
    pub amplitude: C64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSpec {
    mass: f64,
    kind: SolutionKind,
    modes: Vec<Mode>,
}

impl SolutionSpec {
    pub fn new(kind: SolutionKind, mass: f64, modes: Vec<Mode>) -> Result<Self> {
        if !(mass.is_finite() && mass >= 0.0) {
            return Err(Error::InvalidMass(mass));
        }
        if kind == SolutionKind::GenMaxwell && mass != 0.0 {
            return Err(Error::MassiveUnsupported(mass));
        }
        for m in &modes {
            if !(1..=4).contains(&m.branch) {
                return Err(Error::InvalidBranch(m.branch));
            }
            if !(m.amplitude.re.is_finite() && m.amplitude.im.is_finite()) {
                return Err(Error::NonFinite("mode amplitude"));
            }
            let wv = WaveVector::new(m.k, mass)?;
            if kind == SolutionKind::GenMaxwell {
                // helicity basis needs a direction
                helicity_basis(&wv)?;
            }
        }
        Ok(Self { mass, kind, modes })
    }

    pub fn empty(kind: SolutionKind, mass: f64) -> Result<Self> {
        Self::new(kind, mass, Vec::new())
    }

    /// `n` modes with `k ∈ [−2, 2]³`, random branch and amplitude in the unit square.
    pub fn random<R: Rng + ?Sized>(kind: SolutionKind, mass: f64, n: usize, rng: &mut R) -> Result<Self> {
        let modes = (0..n)
            .map(|_| loop {
                let k = [
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                    rng.gen_range(-2.0..2.0),
                ];
                if mass == 0.0 && math::hypot3(k) < 1e-3 {
                    continue;
                }
                break Mode {
                    k,
                    branch: rng.gen_range(1..=4),
                    amplitude: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                };
            })
            .collect();
        Self::new(kind, mass, modes)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn kind(&self) -> SolutionKind {
        self.kind
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn with_kind(&self, kind: SolutionKind) -> Result<Self> {
        Self::new(kind, self.mass, self.modes.clone())
    }

    pub fn require(&self, kind: SolutionKind) -> Result<()> {
        if self.kind == kind {
            Ok(())
        } else {
            Err(Error::WrongKind {
                expected: kind.name(),
                found: self.kind.name(),
            })
        }
    }

    /// Concatenation of the mode lists; kinds and masses must agree.
    pub fn superpose(&self, other: &Self) -> Result<Self> {
        other.require(self.kind)?;
        if other.mass != self.mass {
            return Err(Error::InvalidParameter("superposed specs must share the mass"));
        }
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        Self::new(self.kind, self.mass, modes)
    }

    /// The plane-wave sum this spec stands for.
    pub fn field(&self) -> Result<ModeSum> {
        let mut waves = Vec::with_capacity(self.modes.len());
        let pre = fourier_prefactor();
        for m in &self.modes {
            let wv = WaveVector::new(m.k, self.mass)?;
            let b = usize::from(m.branch - 1);
            let omega = wv.omega();
            let wave = |sign, vector| PlaneWave {
                k: m.k,
                omega,
                sign,
                vector,
            };
            match self.kind {
                SolutionKind::Sf => {
                    let d = cartesian_orts().vectors[b];
                    waves.push(wave(PhaseSign::Minus, d.map(|z| z * m.amplitude * pre)));
                }
                SolutionKind::Dirac => {
                    let v = dirac_spinors(&wv).vectors[b];
                    if b < 2 {
                        waves.push(wave(PhaseSign::Minus, v.map(|z| z * m.amplitude * pre)));
                    } else {
                        waves.push(wave(PhaseSign::Plus, v.map(|z| z * m.amplitude.conj() * pre)));
                    }
                }
                SolutionKind::GenMaxwell => {
                    let e = helicity_basis(&wv)?.vectors;
                    let longitudinal = spinor_add(&e[2], &e[3]);
                    let pre = em_prefactor(omega);
                    let (sign, amp, basis) = match m.branch {
                        1 => (PhaseSign::Minus, m.amplitude, e[0]),
                        2 => (PhaseSign::Plus, m.amplitude.conj(), e[0]),
                        3 => (PhaseSign::Minus, m.amplitude, longitudinal),
                        _ => (PhaseSign::Plus, m.amplitude.conj(), longitudinal),
                    };
                    waves.push(wave(sign, basis.map(|z| z * amp * pre)));
                }
            }
        }
        Ok(ModeSum::new(waves))
    }

    pub fn eval(&self, t: f64, x: &[f64; 3]) -> Result<Spinor> {
        Ok(self.field()?.eval(t, x))
    }
}

pub fn eval_sf(spec: &SolutionSpec, t: f64, x: &[f64; 3]) -> Result<Spinor> {
    spec.require(SolutionKind::Sf)?;
    spec.eval(t, x)
}

pub fn eval_dirac(spec: &SolutionSpec, t: f64, x: &[f64; 3]) -> Result<Spinor> {
    spec.require(SolutionKind::Dirac)?;
    spec.eval(t, x)
}

pub fn eval_gen_maxwell(spec: &SolutionSpec, t: f64, x: &[f64; 3]) -> Result<EMField> {
    spec.require(SolutionKind::GenMaxwell)?;
    Ok(EMField::from_complex(&spec.eval(t, x)?))
}

/// `max_p ‖i∂_t f − sqrt(m² − Δ) f‖`; the square root acts as `sqrt(k² + m²)` per wave.
pub fn residual_sf(field: &ModeSum, m: f64, points: &[SamplePoint]) -> f64 {
    let r = field.map_vectors(|w| {
        let gen = math::omega(w.k, m);
        let f = I * w.dt_factor() - re(gen);
        w.vector.map(|z| z * f)
    });
    r.max_norm(points)
}

/// `‖i∂₀ψ − (α·p̂ + βm)ψ‖` at one jet.
pub fn dirac_residual_at(jet: &Jet, m: f64, alpha: &[ComplexMatrix; 3], beta: &ComplexMatrix) -> f64 {
    let mut r = jet.d[0].map(|z| I * z);
    let bm = beta.mul_spinor(&jet.value);
    for a in 0..4 {
        r[a] -= bm[a] * m;
    }
    for j in 0..3 {
        // α_j p̂_j ψ = α_j (−i ∂_j ψ)
        let ad = alpha[j].mul_spinor(&jet.d[j + 1]);
        for a in 0..4 {
            r[a] -= -I * ad[a];
        }
    }
    norm(&r)
}

/// `max_p ‖i∂₀ψ − (α·p̂ + βm)ψ‖`, derivatives exact per wave.
pub fn residual_dirac(field: &ModeSum, m: f64, points: &[SamplePoint]) -> f64 {
    let alpha = dirac_alpha();
    let beta = gamma_standard_matrices()[0].clone();
    points
        .iter()
        .map(|p| dirac_residual_at(&field.jet(p.t, &p.x), m, &alpha, &beta))
        .fold(0.0, f64::max)
}

/// Field strengths `(E, H, E⁰, H⁰)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EMField {
    pub e: [f64; 3],
    pub h: [f64; 3],
    pub e0: f64,
    pub h0: f64,
}

impl EMField {
    /// `𝓔 = (E¹ − iH¹, E² − iH², E³ − iH³, E⁰ − iH⁰)`.
    pub fn to_complex(&self) -> Spinor {
        [
            c(self.e[0], -self.h[0]),
            c(self.e[1], -self.h[1]),
            c(self.e[2], -self.h[2]),
            c(self.e0, -self.h0),
        ]
    }

    pub fn from_complex(v: &Spinor) -> Self {
        Self {
            e: [v[0].re, v[1].re, v[2].re],
            h: [-v[0].im, -v[1].im, -v[2].im],
            e0: v[3].re,
            h0: -v[3].im,
        }
    }
}

/// Value and derivatives of a real electromagnetic field at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmJet {
    pub value: EMField,
    pub d: [EMField; 4],
}

impl EmJet {
    pub fn from_complex_jet(jet: &Jet) -> Self {
        Self {
            value: EMField::from_complex(&jet.value),
            d: jet.d.map(|d| EMField::from_complex(&d)),
        }
    }
}

/// Anything that yields a real electromagnetic field with its derivatives.
pub trait EmSource {
    fn em_jet(&self, t: f64, x: &[f64; 3]) -> EmJet;
}

/// A [`ModeSum`] read through the `𝓔` packing.
impl EmSource for ModeSum {
    fn em_jet(&self, t: f64, x: &[f64; 3]) -> EmJet {
        EmJet::from_complex_jet(&self.jet(t, x))
    }
}

/// Totally antisymmetric symbol with `ε^{0123} = +1`, hence `ε_{0123} = −1`.
#[derive(Debug, Clone, Copy, Default)]
pub struct LeviCivita4;

impl LeviCivita4 {
    /// `ε^{μνρσ}`.
    pub fn upper(&self, idx: [usize; 4]) -> f64 {
        let mut p = idx;
        if p.iter().any(|&i| i > 3) {
            return 0.0;
        }
        let mut sign = 1.0;
        for i in 0..4 {
            for j in (i + 1)..4 {
                if p[i] == p[j] {
                    return 0.0;
                }
            }
        }
        // selection sort counting transpositions
        for i in 0..4 {
            let mut min = i;
            for j in (i + 1)..4 {
                if p[j] < p[min] {
                    min = j;
                }
            }
            if min != i {
                p.swap(i, min);
                sign = -sign;
            }
        }
        sign
    }

    /// `ε_{μνρσ}`; lowering four indices with `diag(1, −1, −1, −1)` flips the sign.
    pub fn lower(&self, idx: [usize; 4]) -> f64 {
        -self.upper(idx)
    }
}

/// The complex antisymmetric tensor `𝔼^{μν}` built from `𝓔¹, 𝓔², 𝓔³`.
pub fn tensor_e(cal_e: &Spinor) -> ComplexMatrix {
    let [e1, e2, e3, _] = *cal_e;
    ComplexMatrix::from_rows([
        [ZERO, e1, e2, e3],
        [-e1, ZERO, I * e3, -I * e2],
        [-e2, -I * e3, ZERO, I * e1],
        [-e3, I * e2, -I * e1, ZERO],
    ])
}

/// Worst residual of each equivalent form of the generalized Maxwell system.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GenMaxwellResiduals {
    /// Curl/div system with gradient-like sources.
    pub curl_div: f64,
    /// `∂_μ𝓔_ν − ∂_ν𝓔_μ + i ε_{μνρσ} ∂^ρ𝓔^σ = 0`, `∂_μ𝓔^μ = 0`.
    pub vector: f64,
    /// `∂_ν 𝔼^{νμ} = ∂^μ 𝓔⁰` (contraction on the first index).
    pub tensor: f64,
    /// `(i∂₀ − S^j p_j) 𝓔⃗ − i ∂^j 𝓔⁰ = 0` with `p_j = i∂_j`, `∂_μ𝓔^μ = 0`.
    pub spin: f64,
}

impl GenMaxwellResiduals {
    pub fn max(&self) -> f64 {
        self.curl_div.max(self.vector).max(self.tensor).max(self.spin)
    }

    pub fn min(&self) -> f64 {
        self.curl_div.min(self.vector).min(self.tensor).min(self.spin)
    }

    fn merge(&mut self, o: &Self) {
        self.curl_div = self.curl_div.max(o.curl_div);
        self.vector = self.vector.max(o.vector);
        self.tensor = self.tensor.max(o.tensor);
        self.spin = self.spin.max(o.spin);
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self {
            curl_div: self.curl_div / s,
            vector: self.vector / s,
            tensor: self.tensor / s,
            spin: self.spin / s,
        }
    }
}

fn curl(d: &[EMField; 4], pick: impl Fn(&EMField) -> [f64; 3]) -> [f64; 3] {
    let g = |j: usize, a: usize| pick(&d[j + 1])[a];
    [g(1, 2) - g(2, 1), g(2, 0) - g(0, 2), g(0, 1) - g(1, 0)]
}

fn sq3(v: [f64; 3]) -> f64 {
    math::dot3(v, v)
}

/// Curl/div residual of the generalized Maxwell system at one jet.
pub fn curl_div_residual(j: &EmJet) -> f64 {
    let d = &j.d;
    let curl_h = curl(d, |f| f.h);
    let curl_e = curl(d, |f| f.e);
    let grad = |pick: fn(&EMField) -> f64| [pick(&d[1]), pick(&d[2]), pick(&d[3])];
    let grad_e0 = grad(|f| f.e0);
    let grad_h0 = grad(|f| f.h0);
    let ampere: [f64; 3] = core::array::from_fn(|a| d[0].e[a] - curl_h[a] + grad_e0[a]);
    let faraday: [f64; 3] = core::array::from_fn(|a| d[0].h[a] + curl_e[a] + grad_h0[a]);
    let div_e = d[1].e[0] + d[2].e[1] + d[3].e[2] + d[0].e0;
    let div_h = d[1].h[0] + d[2].h[1] + d[3].h[2] + d[0].h0;
    math::sqrt(sq3(ampere) + sq3(faraday) + div_e * div_e + div_h * div_h)
}

/// `∂_μ 𝓔^μ` at one complex jet, with `𝓔^μ = (𝓔⁰, 𝓔⃗)`.
pub fn divergence(jet: &Jet) -> C64 {
    jet.d[0][3] + jet.d[1][0] + jet.d[2][1] + jet.d[3][2]
}

/// `𝓔^μ` from the packing order `(𝓔¹, 𝓔², 𝓔³, 𝓔⁰)`.
#[inline]
fn contravariant(v: &Spinor) -> Spinor {
    [v[3], v[0], v[1], v[2]]
}

fn vector_form_residual(jet: &Jet) -> f64 {
    let eps = LeviCivita4;
    // du[mu][nu] = ∂_μ 𝓔^ν
    let du: [Spinor; 4] = core::array::from_fn(|mu| contravariant(&jet.d[mu]));
    let mut acc = 0.0;
    for mu in 0..4 {
        for nu in 0..4 {
            let mut r = du[mu][nu] * METRIC[nu] - du[nu][mu] * METRIC[mu];
            for rho in 0..4 {
                for sigma in 0..4 {
                    let e = eps.lower([mu, nu, rho, sigma]);
                    if e != 0.0 {
                        // ∂^ρ = g^{ρρ} ∂_ρ
                        r += I * du[rho][sigma] * (e * METRIC[rho]);
                    }
                }
            }
            acc += r.norm_sqr();
        }
    }
    acc += divergence(jet).norm_sqr();
    math::sqrt(acc)
}

fn tensor_form_residual(jet: &Jet) -> f64 {
    let tensors: [ComplexMatrix; 4] = core::array::from_fn(|nu| tensor_e(&jet.d[nu]));
    let mut acc = 0.0;
    for mu in 0..4 {
        let lhs: C64 = (0..4).map(|nu| tensors[nu].get(nu, mu)).sum();
        let rhs = jet.d[mu][3] * METRIC[mu];
        acc += (lhs - rhs).norm_sqr();
    }
    math::sqrt(acc)
}

fn spin_form_residual(jet: &Jet, s: &[ComplexMatrix; 3]) -> f64 {
    let mut r: [C64; 3] = core::array::from_fn(|a| I * jet.d[0][a]);
    for j in 0..3 {
        // S^j p_j 𝓔⃗ with p_j = i∂_j
        let dv = [jet.d[j + 1][0] * I, jet.d[j + 1][1] * I, jet.d[j + 1][2] * I];
        let sp = s[j].mul_vec(&dv).expect("3x3");
        for a in 0..3 {
            r[a] -= sp[a];
        }
        // − i ∂^j 𝓔⁰ = + i ∂_j 𝓔⁰
        r[j] += I * jet.d[j + 1][3];
    }
    let div = divergence(jet);
    math::sqrt(r.iter().map(|z| z.norm_sqr()).sum::<f64>() + div.norm_sqr())
}

/// All four forms evaluated independently at one complex jet of `𝓔`.
pub fn gen_maxwell_residuals_at(jet: &Jet) -> GenMaxwellResiduals {
    GenMaxwellResiduals {
        curl_div: curl_div_residual(&EmJet::from_complex_jet(jet)),
        vector: vector_form_residual(jet),
        tensor: tensor_form_residual(jet),
        spin: spin_form_residual(jet, &spin1_generators()),
    }
}

/// Worst residual per form over the sample points, for a field in the `𝓔` packing.
pub fn residual_gen_maxwell(field: &ModeSum, points: &[SamplePoint]) -> GenMaxwellResiduals {
    let mut out = GenMaxwellResiduals::default();
    for p in points {
        out.merge(&gen_maxwell_residuals_at(&field.jet(p.t, &p.x)));
    }
    out
}

/// Gradient-like sources: `ρ_e = −∂₀E⁰`, `ρ_mag = −∂₀H⁰`, `j_e = −∇E⁰`, `j_mag = −∇H⁰`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradientSources {
    pub rho_e: f64,
    pub rho_mag: f64,
    pub j_e: [f64; 3],
    pub j_mag: [f64; 3],
}

pub fn gradient_sources(j: &EmJet) -> GradientSources {
    let d = &j.d;
    GradientSources {
        rho_e: -d[0].e0,
        rho_mag: -d[0].h0,
        j_e: [-d[1].e0, -d[2].e0, -d[3].e0],
        j_mag: [-d[1].h0, -d[2].h0, -d[3].h0],
    }
}

/// External potential coupling `e ψ̄ γ^μ ψ A_μ`, `A_μ` with lower index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub charge: f64,
    pub potential: [f64; 4],
}

/// `𝓛 = (i/2)(ψ̄ γ^μ ∂_μψ − ∂_μψ̄ γ^μ ψ) − m ψ̄ψ (+ e ψ̄ γ^μ ψ A_μ)`, `ψ̄ = ψ†γ⁰`.
pub fn lagrangian_density(psi: &Spinor, dpsi: &[Spinor; 4], m: f64, coupling: Option<Coupling>) -> C64 {
    let g = gamma_standard_matrices();
    let g0t = g[0].transpose();
    // ψ̄ as a row: (ψ†γ⁰)_a = Σ_b conj(ψ_b) γ⁰_{ba}
    let row = |v: &Spinor| -> Spinor { g0t.mul_spinor(&v.map(|z| z.conj())) };
    let dot = |a: &Spinor, b: &Spinor| -> C64 { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let psibar = row(psi);
    let mut kinetic = ZERO;
    for mu in 0..4 {
        let left = dot(&psibar, &g[mu].mul_spinor(&dpsi[mu]));
        let right = dot(&row(&dpsi[mu]), &g[mu].mul_spinor(psi));
        kinetic += left - right;
    }
    let mut l = I * 0.5 * kinetic - re(m) * dot(&psibar, psi);
    if let Some(cp) = coupling {
        for mu in 0..4 {
            l += re(cp.charge * cp.potential[mu]) * dot(&psibar, &g[mu].mul_spinor(psi));
        }
    }
    l
}

/// Spin projections `s³` and charge signs `g/e` of the orts `d₁ … d₄`.
pub const ORT_SPIN: [f64; 4] = [0.5, -0.5, -0.5, 0.5];
pub const ORT_CHARGE: [f64; 4] = [-1.0, -1.0, 1.0, 1.0];

/// Worst violation, over the four orts, of `p̂ e^{−ikx}d = k e^{−ikx}d`
/// (derivatives from the plane-wave jet at `points`), `s³d = ±½d` and
/// `g d = ∓e d`, with `g` scaled by the charge magnitude `e`.
pub fn ort_relations_residual(k: [f64; 3], e: f64, points: &[SamplePoint]) -> Result<f64> {
    let d = crate::algebra::doublet_spin_set();
    let g = d.charge_operator(e);
    let mut worst: f64 = 0.0;
    for (a, ort) in cartesian_orts().vectors.iter().enumerate() {
        let wave = PlaneWave {
            k,
            omega: math::omega(k, 1.0),
            sign: PhaseSign::Minus,
            vector: *ort,
        };
        let f = ModeSum::new(alloc::vec![wave]);
        for p in points {
            let jet = f.jet(p.t, &p.x);
            for j in 0..3 {
                let p_hat = jet.d[j + 1].map(|z| -I * z);
                worst = worst.max(crate::linalg::spinor_distance(&p_hat, &jet.value.map(|z| z * k[j])));
            }
        }
        let spin = d.s[2].apply_spinor(ort);
        worst = worst.max(crate::linalg::spinor_distance(&spin, &ort.map(|z| z * ORT_SPIN[a])));
        let charge = g.mul_spinor(ort);
        worst = worst.max(crate::linalg::spinor_distance(
            &charge,
            &ort.map(|z| z * (ORT_CHARGE[a] * e)),
        ));
    }
    if !worst.is_finite() {
        return Err(Error::NonFinite("ort relation residual"));
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{spinor_distance, ONE};
    use crate::sampling::sample_points;
    use crate::test_util::rng;
    use alloc::vec;

    fn pts(n: usize, seed: u64) -> Vec<SamplePoint> {
        sample_points(n, &mut rng(seed))
    }

    #[test]
    fn empty_spec_is_zero() {
        let s = SolutionSpec::empty(SolutionKind::Sf, 1.0).unwrap();
        assert_eq!(eval_sf(&s, 0.3, &[1.0, 2.0, 3.0]).unwrap(), [ZERO; 4]);
    }

    #[test]
    fn single_rest_mode_phase() {
        let s = SolutionSpec::new(
            SolutionKind::Sf,
            1.0,
            vec![Mode {
                k: [0.0; 3],
                branch: 1,
                amplitude: ONE,
            }],
        )
        .unwrap();
        let v = eval_sf(&s, core::f64::consts::PI, &[0.0; 3]).unwrap();
        let expected = fourier_prefactor() * math::cis(-core::f64::consts::PI);
        assert!((v[0] - expected).norm() < 1e-16);
        assert_eq!(&v[1..], &[ZERO; 3]);
    }

    #[test]
    fn single_mode_is_time_periodic() {
        let k = [0.3, -0.4, 1.2];
        let m = 0.7;
        let s = SolutionSpec::new(
            SolutionKind::Sf,
            m,
            vec![Mode {
                k,
                branch: 3,
                amplitude: c(0.2, 0.9),
            }],
        )
        .unwrap();
        let period = 2.0 * core::f64::consts::PI / math::omega(k, m);
        let x = [0.1, 0.2, 0.3];
        let a = s.eval(0.25, &x).unwrap();
        let b = s.eval(0.25 + period, &x).unwrap();
        assert!(spinor_distance(&a, &b) < 1e-15);
    }

    #[test]
    fn spec_validation() {
        let bad = Mode {
            k: [0.0; 3],
            branch: 5,
            amplitude: ONE,
        };
        assert_eq!(
            SolutionSpec::new(SolutionKind::Sf, 1.0, vec![bad]),
            Err(Error::InvalidBranch(5))
        );
        let zero_k = Mode {
            k: [0.0; 3],
            branch: 1,
            amplitude: ONE,
        };
        assert_eq!(
            SolutionSpec::new(SolutionKind::Dirac, 0.0, vec![zero_k]),
            Err(Error::ZeroFrequency)
        );
        assert_eq!(
            SolutionSpec::new(SolutionKind::GenMaxwell, 1.0, vec![]),
            Err(Error::MassiveUnsupported(1.0))
        );
        let s = SolutionSpec::empty(SolutionKind::Dirac, 1.0).unwrap();
        assert!(matches!(eval_sf(&s, 0.0, &[0.0; 3]), Err(Error::WrongKind { .. })));
    }

    #[test]
    fn sf_residual_vanishes_and_detects_dispersion_error() {
        let mut r = rng(21);
        let s = SolutionSpec::random(SolutionKind::Sf, 1.3, 10, &mut r).unwrap();
        let f = s.field().unwrap();
        let p = pts(20, 2);
        assert!(residual_sf(&f, 1.3, &p) <= 1e-12 * f.derivative_scale());

        let a = c(0.6, -0.8);
        let one = SolutionSpec::new(
            SolutionKind::Sf,
            1.0,
            vec![Mode {
                k: [0.5, 0.0, 0.0],
                branch: 2,
                amplitude: a,
            }],
        )
        .unwrap();
        let mut f = one.field().unwrap();
        let delta = 0.01;
        f.waves[0].omega += delta;
        let expected = delta * a.norm() * fourier_prefactor();
        assert!((residual_sf(&f, 1.0, &p) - expected).abs() < 1e-15);
    }

    #[test]
    fn dirac_residual_vanishes() {
        let mut r = rng(22);
        for m in [0.0, 0.5, 2.0] {
            let s = SolutionSpec::random(SolutionKind::Dirac, m, 8, &mut r).unwrap();
            let f = s.field().unwrap();
            assert!(residual_dirac(&f, m, &pts(20, 3)) <= 1e-12 * f.derivative_scale());
        }
        let s = SolutionSpec::new(
            SolutionKind::Dirac,
            0.0,
            vec![Mode {
                k: [0.0, 0.0, 1.0],
                branch: 1,
                amplitude: ONE,
            }],
        )
        .unwrap();
        assert!(residual_dirac(&s.field().unwrap(), 0.0, &pts(20, 3)) <= 1e-13);
    }

    #[test]
    fn swapped_spinor_breaks_dirac_residual() {
        // rest frame: H d₃ = −m d₃, so a positive-frequency d₃ misses by 2ω̃
        let m = 1.5;
        let a = c(0.3, 0.4);
        let s = SolutionSpec::new(
            SolutionKind::Dirac,
            m,
            vec![Mode {
                k: [0.0; 3],
                branch: 1,
                amplitude: a,
            }],
        )
        .unwrap();
        let mut f = s.field().unwrap();
        let v3 = dirac_spinors(&WaveVector::new([0.0; 3], m).unwrap()).vectors[2];
        f.waves[0].vector = v3.map(|z| z * a * fourier_prefactor());
        let r = residual_dirac(&f, m, &pts(5, 4));
        let expected = 2.0 * m * a.norm() * fourier_prefactor();
        assert!((r - expected).abs() < 1e-15);
    }

    #[test]
    fn ort_relations_hold_exactly() {
        assert_eq!(ort_relations_residual([0.5, -1.0, 2.0], 1.0, &pts(5, 14)).unwrap(), 0.0);
        assert_eq!(ort_relations_residual([0.0; 3], 2.0, &pts(5, 14)).unwrap(), 0.0);
    }

    #[test]
    fn momentum_eigen_relation_on_orts() {
        // p̂ e^{−ikx} d = k e^{−ikx} d
        let k = [0.3, -1.1, 0.8];
        for b in 1..=4 {
            let s = SolutionSpec::new(
                SolutionKind::Sf,
                1.0,
                vec![Mode {
                    k,
                    branch: b,
                    amplitude: ONE,
                }],
            )
            .unwrap();
            let f = s.field().unwrap();
            for p in pts(5, 5) {
                let jet = f.jet(p.t, &p.x);
                for j in 0..3 {
                    let lhs = jet.d[j + 1].map(|z| -I * z);
                    let rhs = jet.value.map(|z| z * k[j]);
                    assert!(spinor_distance(&lhs, &rhs) < 1e-16);
                }
            }
        }
    }

    #[test]
    fn em_packing_round_trips() {
        let f = EMField {
            e: [1.0, -2.0, 0.5],
            h: [0.25, 3.0, -1.0],
            e0: 0.1,
            h0: -0.7,
        };
        assert_eq!(EMField::from_complex(&f.to_complex()), f);
        assert_eq!(f.to_complex()[3], c(0.1, 0.7));
    }

    #[test]
    fn levi_civita_structure() {
        let e = LeviCivita4;
        assert_eq!(e.upper([0, 1, 2, 3]), 1.0);
        assert_eq!(e.lower([0, 1, 2, 3]), -1.0);
        assert_eq!(e.upper([1, 0, 2, 3]), -1.0);
        assert_eq!(e.upper([1, 2, 3, 0]), -1.0);
        assert_eq!(e.upper([0, 0, 2, 3]), 0.0);
        let mut nonzero = 0;
        for a in 0..4 {
            for b in 0..4 {
                for cc in 0..4 {
                    for d in 0..4 {
                        let v = e.upper([a, b, cc, d]);
                        if v != 0.0 {
                            nonzero += 1;
                        }
                        assert_eq!(v, -e.upper([b, a, cc, d]));
                        assert_eq!(v, -e.upper([a, cc, b, d]));
                        assert_eq!(v, -e.upper([a, b, d, cc]));
                    }
                }
            }
        }
        assert_eq!(nonzero, 24);
    }

    #[test]
    fn tensor_pattern() {
        let t = tensor_e(&[ONE, ZERO, ZERO, ZERO]);
        assert_eq!(t.get(0, 1), ONE);
        assert_eq!(t.get(1, 0), -ONE);
        assert_eq!(t.get(2, 3), I);
        assert_eq!(t.get(3, 2), -I);
        let nonzero = t.entries().iter().filter(|z| **z != ZERO).count();
        assert_eq!(nonzero, 4);
        assert_eq!(tensor_e(&[ZERO; 4]), ComplexMatrix::zeros(4, 4));
        let t = tensor_e(&[c(0.3, 1.0), c(-2.0, 0.5), c(0.7, -0.1), c(5.0, 5.0)]);
        assert_eq!(t.transpose(), t.scale(-ONE));
    }

    #[test]
    fn gen_maxwell_forms_vanish_on_solutions() {
        let mut r = rng(23);
        for _ in 0..5 {
            let s = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 6, &mut r).unwrap();
            let f = s.field().unwrap();
            let res = residual_gen_maxwell(&f, &pts(20, 6));
            assert!(res.max() <= 1e-11 * f.derivative_scale(), "{res:?}");
        }
        assert_eq!(residual_gen_maxwell(&ModeSum::default(), &pts(3, 1)).max(), 0.0);
    }

    #[test]
    fn broken_dispersion_fails_all_four_forms() {
        let mut r = rng(24);
        let s = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 3, &mut r).unwrap();
        let mut f = s.field().unwrap();
        for w in &mut f.waves {
            w.omega *= 1.3;
        }
        let res = residual_gen_maxwell(&f, &pts(10, 7));
        assert!(res.min() > 1e-3, "{res:?}");
    }

    #[test]
    fn transverse_and_source_free_limits() {
        let k = [0.4, -0.9, 1.3];
        let c1 = SolutionSpec::new(
            SolutionKind::GenMaxwell,
            0.0,
            vec![Mode {
                k,
                branch: 1,
                amplitude: c(0.5, 0.2),
            }],
        )
        .unwrap();
        for p in pts(10, 8) {
            let f = eval_gen_maxwell(&c1, p.t, &p.x).unwrap();
            assert!(math::dot3(f.e, k).abs() < 1e-15);
            assert!(math::dot3(f.h, k).abs() < 1e-15);
            assert_eq!((f.e0, f.h0), (0.0, 0.0));
        }
        let mut r = rng(25);
        let s = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 6, &mut r).unwrap();
        let transverse: Vec<Mode> = s.modes().iter().copied().filter(|m| m.branch <= 2).collect();
        let s = SolutionSpec::new(SolutionKind::GenMaxwell, 0.0, transverse).unwrap();
        for p in pts(10, 9) {
            let f = eval_gen_maxwell(&s, p.t, &p.x).unwrap();
            assert!(f.e0.abs() < 1e-16 && f.h0.abs() < 1e-16);
        }
    }

    #[test]
    fn longitudinal_amplitudes() {
        // only c³: E ∝ Re(α e₃ e^{−ikx}), H ∝ Re(iβ e₃ e^{−ikx}) with α = β = c³
        let k = [0.0, 0.6, 0.8];
        let c3 = c(0.7, -0.3);
        let s = SolutionSpec::new(
            SolutionKind::GenMaxwell,
            0.0,
            vec![Mode {
                k,
                branch: 3,
                amplitude: c3,
            }],
        )
        .unwrap();
        let w = 1.0;
        let pre = em_prefactor(w);
        for p in pts(6, 10) {
            let f = eval_gen_maxwell(&s, p.t, &p.x).unwrap();
            let ph = math::cis(-(w * p.t - math::dot3(k, p.x)));
            let (alpha, beta) = (c3, c3);
            for a in 0..3 {
                let e3 = k[a] / w;
                assert!((f.e[a] - (alpha * ph * pre * e3).re).abs() < 1e-15);
                assert!((f.h[a] - (-(beta * ph * pre * e3)).im).abs() < 1e-15);
            }
            assert!((f.e0 - (c3 * ph * pre).re).abs() < 1e-15);
        }
    }

    #[test]
    fn gradient_sources_match_direct_derivatives() {
        let mut r = rng(26);
        let s = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 6, &mut r).unwrap();
        let f = s.field().unwrap();
        let h = 1e-5;
        for p in pts(5, 11) {
            let src = gradient_sources(&f.em_jet(p.t, &p.x));
            let e0 = |t: f64| EMField::from_complex(&f.eval(t, &p.x)).e0;
            let fd = -(e0(p.t + h) - e0(p.t - h)) / (2.0 * h);
            assert!((src.rho_e - fd).abs() < 1e-8);
            let jet = f.em_jet(p.t, &p.x);
            // the sources close the divergence equations
            assert!((jet.d[1].e[0] + jet.d[2].e[1] + jet.d[3].e[2] - src.rho_e).abs() < 1e-13);
        }
    }

    #[test]
    fn divergence_free_on_solutions() {
        let mut r = rng(27);
        let s = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 6, &mut r).unwrap();
        let f = s.field().unwrap();
        for p in pts(10, 12) {
            assert!(divergence(&f.jet(p.t, &p.x)).norm() <= 1e-13 * f.derivative_scale());
        }
    }

    #[test]
    fn lagrangian_cases() {
        let d1 = [ONE, ZERO, ZERO, ZERO];
        assert_eq!(lagrangian_density(&[ZERO; 4], &[[ZERO; 4]; 4], 1.0, None), ZERO);
        assert_eq!(lagrangian_density(&d1, &[[ZERO; 4]; 4], 1.0, None), -ONE);
        let cp = Coupling {
            charge: 2.0,
            potential: [0.5, 0.0, 0.0, 0.0],
        };
        // ψ̄γ⁰ψ A₀ e = 1·0.5·2
        assert_eq!(lagrangian_density(&d1, &[[ZERO; 4]; 4], 1.0, Some(cp)), re(0.0));
    }

    #[test]
    fn lagrangian_vanishes_on_shell() {
        let mut r = rng(28);
        for m in [0.5, 1.0, 2.0] {
            let s = SolutionSpec::random(SolutionKind::Dirac, m, 6, &mut r).unwrap();
            let f = s.field().unwrap();
            for p in pts(10, 13) {
                let jet = f.jet(p.t, &p.x);
                let l = lagrangian_density(&jet.value, &jet.d, m, None);
                let scale = f.amplitude_scale() * f.derivative_scale();
                assert!(l.norm() <= 1e-12 * scale);
            }
        }
    }
}
