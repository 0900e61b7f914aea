//! A short tour of every correspondence, printed as plain text.

use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relwave_core::algebra::{gamma_standard, gamma_tilde, pgi_operators, DIRAC_HERMITICITY};
use relwave_core::linalg::{Spinor, C64};
use relwave_core::modes::{dirac_momentum_basis, WaveVector};
use relwave_core::sampling::sample_points;
use relwave_core::solutions::{residual_dirac, EMField, Mode, SolutionKind, SolutionSpec};
use relwave_core::transforms::{
    apply_v, eight_spinorizations, map_maxwell_to_dirac, match_pgi, random_em_fields, sallhofer_columns, u_operator,
    MediumProfile,
};

use crate::evolve::{evolve_dirac_grid, FieldGrid, Spectral};
use crate::Error;

fn fmt_c(z: C64) -> String {
    format!("{:+.4}{:+.4}i", z.re, z.im)
}

fn fmt_spinor(v: &Spinor) -> String {
    let parts: Vec<String> = v.iter().map(|z| fmt_c(*z)).collect();
    format!("({})", parts.join(", "))
}

/// Runs the showcase with `seed` and returns the text.
pub fn demo(seed: u64) -> Result<String, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::new();
    let w = &mut out;

    writeln!(w, "== gamma matrices").ok();
    let std = gamma_standard().verify(DIRAC_HERMITICITY)?;
    let tilde = gamma_tilde().verify(DIRAC_HERMITICITY)?;
    writeln!(
        w,
        "standard set: anticommutator {:.1e}, hermiticity {:.1e}",
        std.anticommutation, std.hermiticity
    )
    .ok();
    writeln!(
        w,
        "tilde set:    anticommutator {:.1e}, hermiticity {:.1e}",
        tilde.anticommutation, tilde.hermiticity
    )
    .ok();

    writeln!(w, "\n== U: generalized Maxwell field -> massless Dirac spinor").ok();
    let e3 = EMField {
        e: [0.0, 0.0, 1.0],
        ..EMField::default()
    };
    writeln!(
        w,
        "E = (0, 0, 1), H = 0  ->  psi = {}",
        fmt_spinor(&u_operator().apply_spinor(&e3.to_complex()))
    )
    .ok();
    let spec = SolutionSpec::random(SolutionKind::GenMaxwell, 0.0, 5, &mut rng)?;
    let psi = map_maxwell_to_dirac(&spec)?;
    let pts = sample_points(20, &mut rng);
    writeln!(
        w,
        "random 5-mode field: Dirac residual of U E = {:.1e}",
        residual_dirac(&psi, 0.0, &pts)
    )
    .ok();

    writeln!(w, "\n== eight spinorizations and Sallhofer columns as PGI images").ok();
    let ops = pgi_operators(&gamma_standard())?;
    let fields = random_em_fields(8, true, &mut rng);
    let spin = match_pgi(eight_spinorizations, &fields, &ops, 1e-13)?;
    let plain = random_em_fields(8, false, &mut rng);
    let cols = match_pgi(|f| sallhofer_columns(f.e, f.h), &plain, &ops, 1e-13)?;
    for (a, b) in spin.matches.iter().zip(&cols.matches) {
        writeln!(
            w,
            "  #{}: spinorization = {:+} {:<18} column = {:+} {}",
            a.column + 1,
            a.sign,
            a.operator.label(),
            b.sign,
            b.operator.label()
        )
        .ok();
    }
    writeln!(w, "bijections: {} / {}", spin.is_bijection(), cols.is_bijection()).ok();

    writeln!(w, "\n== Coulomb medium").ok();
    let profile = MediumProfile::new(1.0, 1.0, 1.0, 1.0)?;
    for r in [0.5, 1.0, 2.0] {
        let (eps, mu) = profile.permeabilities(&[r, 0.0, 0.0])?;
        writeln!(w, "|x| = {r:.1}: eps = {eps:.4}, mu = {mu:.4}").ok();
    }

    writeln!(w, "\n== V: SF amplitudes -> Dirac amplitudes (m = 1)").ok();
    let sf = SolutionSpec::random(SolutionKind::Sf, 1.0, 3, &mut rng)?;
    for (a, b) in sf.modes().iter().zip(apply_v(&sf)?.modes()) {
        writeln!(
            w,
            "  branch {} k = {:?}: {} -> {}",
            a.branch,
            a.k.map(|x| (x * 1e3).round() / 1e3),
            fmt_c(a.amplitude),
            fmt_c(b.amplitude)
        )
        .ok();
    }

    writeln!(w, "\n== Dirac spinors at k = (0.3, -0.4, 1.2), m = 1").ok();
    let basis = dirac_momentum_basis(&WaveVector::new([0.3, -0.4, 1.2], 1.0)?);
    writeln!(
        w,
        "Gram defect {:.1e}, completeness defect {:.1e}",
        basis.gram_residual(),
        basis.completeness_residual()
    )
    .ok();

    writeln!(w, "\n== spectral evolution, Dirac rest mode, m = 1, t = 1").ok();
    let rest = SolutionSpec::new(
        SolutionKind::Dirac,
        1.0,
        vec![Mode {
            k: [0.0; 3],
            branch: 1,
            amplitude: C64::new(1.0, 0.0),
        }],
    )?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let g0 = FieldGrid::sample(&rest.field()?, 0.0, 1, 16, two_pi)?;
    let g1 = evolve_dirac_grid(&Spectral::new(16), &g0, 1.0, 1.0)?;
    let phase = g1.get(0, 0) / g0.get(0, 0);
    writeln!(
        w,
        "phase picked up: {} (expected e^(-i) = {})",
        fmt_c(phase),
        fmt_c(C64::from_polar(1.0, -1.0))
    )
    .ok();
    Ok(out)
}
