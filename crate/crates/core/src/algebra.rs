//! Concrete representations: Pauli matrices, the Pauli–Dirac gamma matrices,
//! the real-linear "tilde" gammas acting on `𝓔`, the spin-1 generators, the
//! particle–antiparticle doublet spin operators and the eight
//! Pauli–Gürsey–Ibragimov (PGI) symmetries of the massless Dirac equation.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::error::Result;
use crate::linalg::{re, ComplexMatrix, RealLinearOperator, I, ONE, ZERO};
use crate::sampling::sample_points;
use crate::solutions::{residual_dirac, SolutionKind, SolutionSpec};

/// Signature `(g⁰⁰, g¹¹, g²², g³³)`.
pub const METRIC: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// Expected hermiticity signs: `γ⁰† = γ⁰`, `γᵏ† = −γᵏ`.
pub const DIRAC_HERMITICITY: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

pub fn pauli_matrices() -> [ComplexMatrix; 3] {
    [
        ComplexMatrix::from_rows([[ZERO, ONE], [ONE, ZERO]]),
        ComplexMatrix::from_rows([[ZERO, -I], [I, ZERO]]),
        ComplexMatrix::from_rows([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

/// `γ⁰ = diag(I, −I)`, `γˡ = [[0, σˡ], [−σˡ, 0]]`.
pub fn gamma_standard_matrices() -> [ComplexMatrix; 4] {
    let id = ComplexMatrix::identity(2);
    let zero = ComplexMatrix::zeros(2, 2);
    let [s1, s2, s3] = pauli_matrices();
    let spatial = |s: &ComplexMatrix| ComplexMatrix::block2(&zero, s, &-s, &zero);
    [
        ComplexMatrix::block2(&id, &zero, &zero, &-&id),
        spatial(&s1),
        spatial(&s2),
        spatial(&s3),
    ]
}

/// Chirality matrix `iγ⁰γ¹γ²γ³`, used as `γ⁴` in the PGI operators.
pub fn gamma4() -> ComplexMatrix {
    let [g0, g1, g2, g3] = gamma_standard_matrices();
    (&(&(&g0 * &g1) * &g2) * &g3).scale(I)
}

/// `α = γ⁰γ`, `β = γ⁰`.
pub fn dirac_alpha() -> [ComplexMatrix; 3] {
    let g = gamma_standard_matrices();
    [&g[0] * &g[1], &g[0] * &g[2], &g[0] * &g[3]]
}

/// Four (possibly real-linear) gamma operators sharing the Minkowski metric.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    gammas: [RealLinearOperator; 4],
}

/// Residuals of the Clifford relations and hermiticity pattern.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CliffordReport {
    /// `max_{μν} ‖{γ^μ, γ^ν} − 2 g^{μν} I‖_F`
    pub anticommutation: f64,
    /// `max_μ ‖γ^μ† − s_μ γ^μ‖_F`
    pub hermiticity: f64,
}

impl CliffordReport {
    pub fn max(&self) -> f64 {
        self.anticommutation.max(self.hermiticity)
    }
}

impl GammaSet {
    pub fn new(gammas: [RealLinearOperator; 4]) -> Result<Self> {
        let n = gammas[0].dim();
        for g in &gammas[1..] {
            if g.dim() != n {
                return Err(crate::Error::DimensionMismatch {
                    expected: n,
                    found: g.dim(),
                });
            }
        }
        Ok(Self { gammas })
    }

    pub fn from_matrices(m: [ComplexMatrix; 4]) -> Result<Self> {
        Self::new(m.map(RealLinearOperator::linear))
    }

    pub fn metric(&self) -> [f64; 4] {
        METRIC
    }

    pub fn gammas(&self) -> &[RealLinearOperator; 4] {
        &self.gammas
    }

    pub fn dim(&self) -> usize {
        self.gammas[0].dim()
    }

    /// Products are taken as real-linear compositions, so the same check
    /// covers ordinary matrices and the conjugation-carrying tilde set.
    pub fn verify(&self, hermiticity_signs: [f64; 4]) -> Result<CliffordReport> {
        let id = RealLinearOperator::identity(self.dim());
        let mut anticommutation: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let ac = self.gammas[mu].anticommutator(&self.gammas[nu])?;
                let target = if mu == nu {
                    id.scale(re(2.0 * METRIC[mu]))
                } else {
                    id.scale(ZERO)
                };
                anticommutation = anticommutation.max(ac.distance(&target)?);
            }
        }
        let mut hermiticity: f64 = 0.0;
        for (g, s) in self.gammas.iter().zip(hermiticity_signs) {
            hermiticity = hermiticity.max(g.adjoint().distance(&g.scale(re(s)))?);
        }
        Ok(CliffordReport {
            anticommutation,
            hermiticity,
        })
    }
}

/// Pauli–Dirac representation.
pub fn gamma_standard() -> GammaSet {
    GammaSet::from_matrices(gamma_standard_matrices()).expect("4x4 set")
}

/// The gammas acting on `𝓔 = (E − iH, E⁰ − iH⁰)`, written out as matrices
/// times complex conjugation. They equal `U⁻¹ γ^μ U`.
pub fn gamma_tilde() -> GammaSet {
    let (o, z) = (ONE, ZERO);
    let m = [
        ComplexMatrix::from_rows([[o, z, z, z], [z, o, z, z], [z, z, o, z], [z, z, z, -o]]),
        ComplexMatrix::from_rows([[z, z, z, o], [z, z, -I, z], [z, I, z, z], [-o, z, z, z]]),
        ComplexMatrix::from_rows([[z, z, I, z], [z, z, z, o], [-I, z, z, z], [z, -o, z, z]]),
        ComplexMatrix::from_rows([[z, -I, z, z], [I, z, z, z], [z, z, z, o], [z, z, -o, z]]),
    ];
    GammaSet::new(m.map(RealLinearOperator::antilinear)).expect("4x4 set")
}

/// `‖(γ^ν p_ν + m)(γ^μ p_μ − m) − (p·p − m²) I‖_F` for a contravariant `p`.
pub fn kg_factorization_residual(p: [f64; 4], m: f64) -> f64 {
    let g = gamma_standard_matrices();
    let id = ComplexMatrix::identity(4);
    let mut slash = ComplexMatrix::zeros(4, 4);
    for mu in 0..4 {
        slash = &slash + &g[mu].scale(re(METRIC[mu] * p[mu]));
    }
    let plus = &slash + &id.scale(re(m));
    let minus = &slash - &id.scale(re(m));
    let pp = p[0] * p[0] - p[1] * p[1] - p[2] * p[2] - p[3] * p[3];
    (&(&plus * &minus) - &id.scale(re(pp - m * m))).frobenius_norm()
}

/// Generators of the spin-1 representation, `(S^j)_{ab} = −i ε_{jab}`.
pub fn spin1_generators() -> [ComplexMatrix; 3] {
    let z = ZERO;
    [
        ComplexMatrix::from_rows([[z, z, z], [z, z, -I], [z, I, z]]),
        ComplexMatrix::from_rows([[z, z, I], [z, z, z], [-I, z, z]]),
        ComplexMatrix::from_rows([[z, -I, z], [I, z, z], [z, z, z]]),
    ]
}

/// Operators of the spin-1/2 particle–antiparticle doublet.
#[derive(Debug, Clone)]
pub struct DoubletSpinSet {
    /// Charge-sign operator `g = −γ⁰`.
    pub g: ComplexMatrix,
    /// Doublet spin: `½σ` on the particle block, `−½ C σ C` on the antiparticle block.
    pub s: [RealLinearOperator; 3],
    /// Spin in the Foldy–Wouthuysen representation, `½ diag(σ, σ)`.
    pub s_fw: [ComplexMatrix; 3],
    /// `v = diag(1, 1, C, C)`, its own inverse.
    pub v: RealLinearOperator,
}

pub fn doublet_spin_set() -> DoubletSpinSet {
    let zero = ComplexMatrix::zeros(2, 2);
    let half = re(0.5);
    let sigma = pauli_matrices();
    let s = sigma.clone().map(|sj| {
        let upper = sj.scale(half);
        let lower = sj.conj().scale(-half);
        RealLinearOperator::linear(ComplexMatrix::block2(&upper, &zero, &zero, &lower))
    });
    let s_fw = sigma.map(|sj| ComplexMatrix::block2(&sj, &zero, &zero, &sj).scale(half));
    DoubletSpinSet {
        g: gamma_standard_matrices()[0].scale(-ONE),
        s,
        s_fw,
        v: block_conjugation(),
    }
}

/// `diag(1, 1, C, C)`.
pub fn block_conjugation() -> RealLinearOperator {
    RealLinearOperator::new(
        ComplexMatrix::from_diag(&[ONE, ONE, ZERO, ZERO]),
        ComplexMatrix::from_diag(&[ZERO, ZERO, ONE, ONE]),
    )
    .expect("4x4")
}

impl DoubletSpinSet {
    /// Charge operator `e g`.
    pub fn charge_operator(&self, e: f64) -> ComplexMatrix {
        self.g.scale(re(e))
    }

    /// `max_j ‖v (i s_FW^j) v − i s^j‖`: the spins are linked through `v` in
    /// their anti-Hermitian form.
    pub fn link_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 0..3 {
            let fw = RealLinearOperator::linear(self.s_fw[j].scale(I));
            let linked = self.v.after(&fw.after(&self.v)?)?;
            worst = worst.max(linked.distance(&self.s[j].scale(I))?);
        }
        Ok(worst)
    }

    /// Same link in both directions: `v (i s^j) v − i s_FW^j`.
    pub fn inverse_link_residual(&self) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for j in 0..3 {
            let linked = self.v.after(&self.s[j].scale(I).after(&self.v)?)?;
            let fw = RealLinearOperator::linear(self.s_fw[j].scale(I));
            worst = worst.max(linked.distance(&fw)?);
        }
        Ok(worst)
    }
}

/// Labels for the eight PGI operators, in the order they are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PgiOperator {
    Gamma2C,
    IGamma2C,
    Gamma2Gamma4C,
    IGamma2Gamma4C,
    Gamma4,
    IGamma4,
    ImaginaryUnit,
    Identity,
}

impl PgiOperator {
    pub const ALL: [PgiOperator; 8] = [
        PgiOperator::Gamma2C,
        PgiOperator::IGamma2C,
        PgiOperator::Gamma2Gamma4C,
        PgiOperator::IGamma2Gamma4C,
        PgiOperator::Gamma4,
        PgiOperator::IGamma4,
        PgiOperator::ImaginaryUnit,
        PgiOperator::Identity,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PgiOperator::Gamma2C => "gamma2_C",
            PgiOperator::IGamma2C => "i_gamma2_C",
            PgiOperator::Gamma2Gamma4C => "gamma2_gamma4_C",
            PgiOperator::IGamma2Gamma4C => "i_gamma2_gamma4_C",
            PgiOperator::Gamma4 => "gamma4",
            PgiOperator::IGamma4 => "i_gamma4",
            PgiOperator::ImaginaryUnit => "i",
            PgiOperator::Identity => "I",
        }
    }
}

impl fmt::Display for PgiOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The eight PGI operators built from the set's `γ²` and its chirality matrix.
/// Requires a linear gamma set.
pub fn pgi_operators(gs: &GammaSet) -> Result<Vec<(PgiOperator, RealLinearOperator)>> {
    let g = gs.gammas();
    let m: Vec<&ComplexMatrix> = g.iter().map(|o| o.linear_part()).collect();
    let chirality = (&(&(m[0] * m[1]) * m[2]) * m[3]).scale(I);
    Ok(pgi_operators_with(m[2], &chirality))
}

/// PGI set for an explicit `γ²` and `γ⁴`; lets callers substitute `γ⁴`.
pub fn pgi_operators_with(gamma2: &ComplexMatrix, gamma4: &ComplexMatrix) -> Vec<(PgiOperator, RealLinearOperator)> {
    let g24 = gamma2 * gamma4;
    let n = gamma2.rows();
    PgiOperator::ALL
        .iter()
        .map(|&op| {
            let rl = match op {
                PgiOperator::Gamma2C => RealLinearOperator::antilinear(gamma2.clone()),
                PgiOperator::IGamma2C => RealLinearOperator::antilinear(gamma2.scale(I)),
                PgiOperator::Gamma2Gamma4C => RealLinearOperator::antilinear(g24.clone()),
                PgiOperator::IGamma2Gamma4C => RealLinearOperator::antilinear(g24.scale(I)),
                PgiOperator::Gamma4 => RealLinearOperator::linear(gamma4.clone()),
                PgiOperator::IGamma4 => RealLinearOperator::linear(gamma4.scale(I)),
                PgiOperator::ImaginaryUnit => RealLinearOperator::identity(n).scale(I),
                PgiOperator::Identity => RealLinearOperator::identity(n),
            };
            (op, rl)
        })
        .collect()
}

/// Worst relative massless-Dirac residual per PGI operator.
#[derive(Debug, Clone, PartialEq)]
pub struct PgiReport {
    pub residuals: Vec<(PgiOperator, f64)>,
}

impl PgiReport {
    pub fn max(&self) -> f64 {
        self.residuals.iter().map(|r| r.1).fold(0.0, f64::max)
    }

    pub fn failing(&self, tol: f64) -> Vec<PgiOperator> {
        self.residuals.iter().filter(|r| r.1 > tol).map(|r| r.0).collect()
    }
}

/// Applies every operator pointwise to `trials` random massless Dirac
/// solutions and measures the massless Dirac residual of the image, relative
/// to the field's derivative scale.
pub fn pgi_invariance_check<R: Rng + ?Sized>(
    ops: &[(PgiOperator, RealLinearOperator)],
    trials: usize,
    modes: usize,
    samples: usize,
    rng: &mut R,
) -> Result<PgiReport> {
    let mut residuals: Vec<(PgiOperator, f64)> = ops.iter().map(|o| (o.0, 0.0)).collect();
    for _ in 0..trials {
        let spec = SolutionSpec::random(SolutionKind::Dirac, 0.0, modes, rng)?;
        let field = spec.field()?;
        let points = sample_points(samples, rng);
        let scale = field.derivative_scale().max(f64::MIN_POSITIVE);
        for (slot, (_, op)) in residuals.iter_mut().zip(ops) {
            let image = field.apply_real_linear(op);
            let r = residual_dirac(&image, 0.0, &points) / scale;
            slot.1 = slot.1.max(r);
        }
    }
    Ok(PgiReport { residuals })
}

/// `‖AB − BA − i C‖` style helper used by the commutation checks.
pub fn commutation_residual(a: &ComplexMatrix, b: &ComplexMatrix, expected: &ComplexMatrix) -> f64 {
    let comm = a.commutator(b).expect("same dims");
    (&comm - expected).frobenius_norm()
}

/// `S · n` for a real 3-vector `n`.
pub fn spin1_projection(n: [f64; 3]) -> ComplexMatrix {
    let s = spin1_generators();
    let mut out = ComplexMatrix::zeros(3, 3);
    for j in 0..3 {
        out = &out + &s[j].scale(re(n[j]));
    }
    out
}

/// `H(k) = α·k + β m`.
pub fn dirac_hamiltonian(k: [f64; 3], m: f64) -> ComplexMatrix {
    let alpha = dirac_alpha();
    let beta = &gamma_standard_matrices()[0];
    let mut h = beta.scale(re(m));
    for j in 0..3 {
        h = &h + &alpha[j].scale(re(k[j]));
    }
    h
}

/// Scale used by the factorization tolerance: `|p|² + m²` with a Euclidean `|p|`.
pub fn kg_scale(p: [f64; 4], m: f64) -> f64 {
    p.iter().map(|x| x * x).sum::<f64>() + m * m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::test_util::rng;
    use rand::Rng;

    fn id(n: usize) -> ComplexMatrix {
        ComplexMatrix::identity(n)
    }

    #[test]
    fn pauli_products() {
        let [s1, s2, s3] = pauli_matrices();
        assert_eq!(&s1 * &s2, s3.scale(I));
        assert_eq!(&s3 * &s3, id(2));
        assert_eq!(s1.anticommutator(&s2).unwrap(), ComplexMatrix::zeros(2, 2));
    }

    #[test]
    fn standard_gamma_entries() {
        let g = gamma_standard_matrices();
        assert_eq!(g[0], ComplexMatrix::from_diag(&[ONE, ONE, -ONE, -ONE]));
        assert_eq!(g[0].anticommutator(&g[0]).unwrap(), id(4).scale(re(2.0)));
        assert_eq!(g[1].anticommutator(&g[2]).unwrap(), ComplexMatrix::zeros(4, 4));
    }

    #[test]
    fn gamma4_properties() {
        let g4 = gamma4();
        let g0 = &gamma_standard_matrices()[0];
        assert_eq!(&g4 * &g4, id(4));
        assert_eq!(g4.anticommutator(g0).unwrap(), ComplexMatrix::zeros(4, 4));
        assert_eq!(g4.adjoint(), g4);
    }

    #[test]
    fn clifford_reports_vanish_for_both_sets() {
        let r = gamma_standard().verify(DIRAC_HERMITICITY).unwrap();
        assert!(r.max() <= 1e-14, "{r:?}");
        let r = gamma_tilde().verify(DIRAC_HERMITICITY).unwrap();
        assert!(r.max() <= 1e-14, "{r:?}");
    }

    #[test]
    fn broken_gamma_set_reports_raw_residual() {
        let mut m = gamma_standard_matrices();
        m[1] = m[1].scale(re(2.0));
        let r = GammaSet::from_matrices(m.clone())
            .unwrap()
            .verify(DIRAC_HERMITICITY)
            .unwrap();
        // oracle: {2γ¹, 2γ¹} − 2g¹¹I = −8I + 2I = −6I, Frobenius 6·√4
        let oracle = (&m[1].anticommutator(&m[1]).unwrap() + &id(4).scale(re(2.0))).frobenius_norm();
        assert_eq!(oracle, 12.0);
        assert_eq!(r.anticommutation, oracle);
        assert_eq!(r.hermiticity, 0.0);
    }

    #[test]
    fn factorization_special_points() {
        assert_eq!(kg_factorization_residual([1.5, 0.0, 0.0, 0.0], 1.5), 0.0);
        assert_eq!(kg_factorization_residual([0.0; 4], 1.0), 0.0);
        let mut r = rng(7);
        for _ in 0..100 {
            let p = [0; 4].map(|_| r.gen_range(-5.0..5.0));
            let m = r.gen_range(0.0..3.0);
            assert!(kg_factorization_residual(p, m) <= 1e-12 * kg_scale(p, m));
        }
    }

    #[test]
    fn spin1_algebra() {
        let s = spin1_generators();
        let casimir = &(&(&s[0] * &s[0]) + &(&s[1] * &s[1])) + &(&s[2] * &s[2]);
        assert_eq!(casimir, id(3).scale(re(2.0)));
        assert_eq!(commutation_residual(&s[0], &s[1], &s[2].scale(I)), 0.0);
        assert_eq!(commutation_residual(&s[1], &s[2], &s[0].scale(I)), 0.0);
    }

    #[test]
    fn fw_spin_obeys_su2() {
        let d = doublet_spin_set();
        for (a, b, cc) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            assert!(commutation_residual(&d.s_fw[a], &d.s_fw[b], &d.s_fw[cc].scale(I)) < 1e-15);
        }
    }

    #[test]
    fn doublet_eigen_relations_on_orts() {
        let d = doublet_spin_set();
        let orts = crate::modes::cartesian_orts();
        let spin = [0.5, -0.5, -0.5, 0.5];
        let charge = [-1.0, -1.0, 1.0, 1.0];
        let e = 1.0;
        for a in 0..4 {
            let v = orts.vectors[a];
            assert_eq!(d.s[2].apply_spinor(&v), v.map(|z| z * spin[a]));
            assert_eq!(d.charge_operator(e).mul_spinor(&v), v.map(|z| z * charge[a] * e));
        }
        assert_eq!(d.g, ComplexMatrix::from_diag(&[-ONE, -ONE, ONE, ONE]));
    }

    #[test]
    fn v_is_an_involution_and_links_spins() {
        let d = doublet_spin_set();
        assert_eq!(d.v.after(&d.v).unwrap(), RealLinearOperator::identity(4));
        assert!(d.link_residual().unwrap() <= 1e-14);
        assert!(d.inverse_link_residual().unwrap() <= 1e-14);
    }

    #[test]
    fn pgi_set_shape() {
        let ops = pgi_operators(&gamma_standard()).unwrap();
        assert_eq!(ops.len(), 8);
        assert!(ops[..4].iter().all(|o| o.1.is_antilinear()));
        assert!(ops[4..].iter().all(|o| o.1.is_linear()));
        let x = [c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0), c(-0.5, 0.5)];
        assert_eq!(ops[7].1.apply_spinor(&x), x);
        let g2c = &ops[0].1;
        assert_eq!(g2c.after(g2c).unwrap(), RealLinearOperator::identity(4));
    }

    #[test]
    fn pgi_operators_are_symmetries() {
        let ops = pgi_operators(&gamma_standard()).unwrap();
        let report = pgi_invariance_check(&ops, 4, 5, 10, &mut rng(3)).unwrap();
        assert!(report.max() <= 1e-10, "{report:?}");
        let by_label = |op| report.residuals.iter().find(|r| r.0 == op).unwrap().1;
        assert_eq!(by_label(PgiOperator::Identity), report.residuals[7].1);
    }

    #[test]
    fn replacing_gamma4_by_gamma0_breaks_invariance() {
        let g = gamma_standard_matrices();
        let ops = pgi_operators_with(&g[2], &g[0]);
        let report = pgi_invariance_check(&ops, 2, 5, 10, &mut rng(4)).unwrap();
        assert!(!report.failing(1e-10).is_empty());
        assert!(report.failing(1e-10).contains(&PgiOperator::Gamma4));
    }
}
