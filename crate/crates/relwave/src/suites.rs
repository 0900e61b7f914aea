//! Named verification suites. Every random quantity comes from one ChaCha
//! stream per suite, keyed by the configured seed, so a suite produces the
//! same residuals whether it runs alone or as part of `all`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relwave_core::algebra::{
    doublet_spin_set, gamma_standard, gamma_standard_matrices, gamma_tilde, kg_factorization_residual, kg_scale,
    pgi_invariance_check, pgi_operators, pgi_operators_with, GammaSet, DIRAC_HERMITICITY,
};
use relwave_core::linalg::{c, spinor_distance};
use relwave_core::math;
use relwave_core::modes::{
    dirac_momentum_basis, helicity_basis, helicity_eigen_residual, spinor_energy_residual, WaveVector,
};
use relwave_core::sampling::{sample_points, SamplePoint};
use relwave_core::solutions::{
    eval_dirac, lagrangian_density, ort_relations_residual, residual_dirac, residual_gen_maxwell, residual_sf,
    GenMaxwellResiduals, SolutionKind, SolutionSpec,
};
use relwave_core::transforms::{
    amplitude_norm, apply_v, apply_v_field, apply_v_inv, check_intertwining_identity, column_requires_swap,
    eight_spinorizations, map_dirac_to_maxwell, map_maxwell_to_dirac, match_pgi, medium_amplitude_equivalence,
    random_em_fields, sallhofer_columns, sallhofer_residual, tilde_conjugation_residual, u_operator, Medium,
    MediumProfile, MediumWaves,
};

use crate::config::Config;
use crate::evolve::{
    evolve_gen_maxwell_grid, fd_errors, lattice_spec, u_diagram, v_diagram, FieldGrid, Generator, Spectral,
};
use crate::report::{CheckResult, SuiteReport};
use crate::Error;

pub const SUITES: [&str; 5] = ["algebra", "modes", "solutions", "transforms", "evolve"];

/// Trial counts that are part of the check definitions rather than the config.
const SPECS: usize = 20;
const KG_SAMPLES: usize = 1000;
const MODE_SAMPLES: usize = 100;
const INTERTWINING_TRIALS: usize = 50;
/// Lattice index bound for evolution test modes; keeps `ωh` small enough for
/// the finite-difference ratio to sit in its asymptotic regime.
const LATTICE_INDEX: usize = 2;
const FD_STEP: f64 = 0.02;

/// Runs `name` (one of [`SUITES`] or `all`).
pub fn run_suite(name: &str, cfg: &Config) -> Result<SuiteReport, Error> {
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        s if SUITES.contains(&s) => vec![s],
        other => return Err(Error::UnknownSuite(other.to_owned())),
    };
    cfg.validate()?;
    let mut checks = Vec::new();
    for s in names {
        let stream = SUITES.iter().position(|x| *x == s).expect("known suite") as u64;
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(stream);
        let mut ctx = Ctx {
            cfg,
            tol: cfg.suite_tolerance(s),
            rng,
            checks: Vec::new(),
        };
        match s {
            "algebra" => algebra(&mut ctx),
            "modes" => modes(&mut ctx),
            "solutions" => solutions(&mut ctx),
            "transforms" => transforms(&mut ctx),
            _ => evolve(&mut ctx),
        }
        checks.extend(ctx.checks);
    }
    Ok(SuiteReport::new(name, cfg.seed, cfg.tol, checks))
}

struct Ctx<'a> {
    cfg: &'a Config,
    tol: Option<f64>,
    rng: ChaCha8Rng,
    checks: Vec<CheckResult>,
}

impl Ctx<'_> {
    /// Records `residual <= tol` (the configured override wins over `default`).
    fn at_most(&mut self, name: &str, default: f64, residual: Result<f64, Error>) {
        let tol = self.tol.unwrap_or(default);
        self.checks.push(match residual {
            Ok(r) => CheckResult::at_most(name, r, tol),
            Err(e) => CheckResult::errored(name, tol, &e),
        });
    }

    /// Negative control: the residual must exceed `threshold`. Not affected by
    /// tolerance overrides.
    fn above(&mut self, name: &str, threshold: f64, residual: Result<f64, Error>) {
        self.checks.push(match residual {
            Ok(r) => CheckResult::above(name, r, threshold),
            Err(e) => CheckResult::errored(name, threshold, &e),
        });
    }

    /// Records several related checks computed together; an error marks all
    /// of them as failed.
    fn at_most_all<const N: usize>(&mut self, checks: [(&str, f64); N], residuals: Result<[f64; N], Error>) {
        match residuals {
            Ok(rs) => {
                for ((name, tol), r) in checks.into_iter().zip(rs) {
                    self.at_most(name, tol, Ok(r));
                }
            }
            Err(e) => {
                for (name, tol) in checks {
                    let tol = self.tol.unwrap_or(tol);
                    self.checks.push(CheckResult::errored(name, tol, &e));
                }
            }
        }
    }

    fn skip(&mut self, name: &str, default: f64, reason: &str) {
        let tol = self.tol.unwrap_or(default);
        self.checks.push(CheckResult::skipped(name, tol, reason));
    }

    fn points(&mut self) -> Vec<SamplePoint> {
        sample_points(self.cfg.samples_count, &mut self.rng)
    }

    fn spec(&mut self, kind: SolutionKind, mass: f64) -> Result<SolutionSpec, Error> {
        Ok(SolutionSpec::random(kind, mass, self.cfg.modes_count, &mut self.rng)?)
    }
}

/// Largest value over a fallible sweep.
fn worst<T>(items: impl IntoIterator<Item = T>, f: impl FnMut(T) -> Result<f64, Error>) -> Result<f64, Error> {
    items
        .into_iter()
        .map(f)
        .try_fold(0.0, |acc: f64, r| r.map(|v| acc.max(v)))
}

/// Same as [`worst`] but treats NaN as the worst value.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn algebra(ctx: &mut Ctx) {
    let clifford = |gs: GammaSet| -> Result<f64, Error> { Ok(gs.verify(DIRAC_HERMITICITY)?.max()) };
    ctx.at_most("clifford_standard", 1e-14, clifford(gamma_standard()));
    ctx.at_most("clifford_tilde", 1e-14, clifford(gamma_tilde()));
    ctx.at_most(
        "tilde_conjugation",
        1e-13,
        tilde_conjugation_residual().map_err(Error::from),
    );

    let broken = || -> Result<f64, Error> {
        let mut g = gamma_standard_matrices();
        g[1] = g[1].scale(c(2.0, 0.0));
        Ok(GammaSet::from_matrices(g)?.verify(DIRAC_HERMITICITY)?.anticommutation)
    };
    ctx.above("clifford_broken_control", 1.0, broken());

    let mut kg: f64 = 0.0;
    for _ in 0..KG_SAMPLES {
        let p = [0; 4].map(|_| ctx.rng.gen_range(-5.0..5.0));
        let m = ctx.rng.gen_range(0.0..3.0);
        kg = nan_max(kg, kg_factorization_residual(p, m) / kg_scale(p, m));
    }
    ctx.at_most("kg_factorization", 1e-12, Ok(kg));

    let (modes, samples) = (ctx.cfg.modes_count, ctx.cfg.samples_count);
    let pgi = pgi_operators(&gamma_standard())
        .and_then(|ops| pgi_invariance_check(&ops, SPECS, modes, samples, &mut ctx.rng))
        .map(|r| r.max());
    ctx.at_most("pgi_invariance", 1e-10, pgi.map_err(Error::from));

    let g = gamma_standard_matrices();
    let control =
        pgi_invariance_check(&pgi_operators_with(&g[2], &g[0]), SPECS, modes, samples, &mut ctx.rng).map(|r| r.max());
    ctx.above("pgi_gamma0_control", 1e-10, control.map_err(Error::from));

    let set = doublet_spin_set();
    let link = set
        .link_residual()
        .and_then(|a| set.inverse_link_residual().map(|b| a.max(b)));
    ctx.at_most("spin_doublet_link", 1e-14, link.map_err(Error::from));
    ctx.at_most(
        "u_unitarity",
        1e-13,
        u_operator().unitarity_defect().map_err(Error::from),
    );
}

fn random_wave_vector(rng: &mut ChaCha8Rng, mass: f64) -> Result<WaveVector, Error> {
    loop {
        let k = [0; 3].map(|_| rng.gen_range(-3.0..3.0));
        if math::hypot3(k) > 1e-6 {
            return Ok(WaveVector::new(k, mass)?);
        }
    }
}

fn modes(ctx: &mut Ctx) {
    let mass = ctx.cfg.mass;
    let wvs: Result<Vec<WaveVector>, Error> = (0..MODE_SAMPLES)
        .map(|_| random_wave_vector(&mut ctx.rng, mass))
        .collect();
    let Ok(wvs) = wvs else {
        let e = wvs.unwrap_err();
        ctx.at_most("helicity_eigen", 1e-13, Err(e));
        return;
    };
    ctx.at_most(
        "helicity_eigen",
        1e-13,
        worst(&wvs, |w| Ok(helicity_eigen_residual(w)?)),
    );
    ctx.at_most(
        "helicity_completeness",
        1e-13,
        worst(&wvs, |w| {
            let b = helicity_basis(w)?;
            Ok(b.gram_residual().max(b.completeness_residual()))
        }),
    );
    ctx.at_most(
        "dirac_orthonormality",
        1e-13,
        worst(&wvs, |w| Ok(dirac_momentum_basis(w).gram_residual())),
    );
    ctx.at_most(
        "dirac_completeness",
        1e-13,
        worst(&wvs, |w| Ok(dirac_momentum_basis(w).completeness_residual())),
    );
    ctx.at_most(
        "dirac_energy",
        1e-13,
        worst(&wvs, |w| Ok(spinor_energy_residual(w) / w.omega())),
    );
    let points = ctx.points();
    let e = ctx.cfg.charge_e;
    ctx.at_most(
        "ort_relations",
        0.0,
        worst(&wvs, |w| Ok(ort_relations_residual(w.k(), e, &points)?)),
    );
}

fn solutions(ctx: &mut Ctx) {
    let m = ctx.cfg.mass;
    let sf = (0..SPECS)
        .map(|_| {
            let f = ctx.spec(SolutionKind::Sf, m)?.field()?;
            let p = ctx.points();
            Ok(residual_sf(&f, m, &p) / f.derivative_scale().max(f64::MIN_POSITIVE))
        })
        .collect::<Result<Vec<f64>, Error>>()
        .map(|v| v.into_iter().fold(0.0, nan_max));
    ctx.at_most("sf_equation", 1e-12, sf);

    let dirac = (0..SPECS)
        .map(|_| {
            let f = ctx.spec(SolutionKind::Dirac, m)?.field()?;
            let p = ctx.points();
            Ok(residual_dirac(&f, m, &p) / f.derivative_scale().max(f64::MIN_POSITIVE))
        })
        .collect::<Result<Vec<f64>, Error>>()
        .map(|v| v.into_iter().fold(0.0, nan_max));
    ctx.at_most("dirac_equation", 1e-12, dirac);

    let forms = (0..SPECS)
        .map(|_| {
            let f = ctx.spec(SolutionKind::GenMaxwell, 0.0)?.field()?;
            let p = ctx.points();
            Ok(residual_gen_maxwell(&f, &p).scaled(1.0 / f.derivative_scale().max(f64::MIN_POSITIVE)))
        })
        .collect::<Result<Vec<_>, Error>>();
    let forms = forms.map(|rs| {
        let pick = |g: fn(&GenMaxwellResiduals) -> f64| rs.iter().map(g).fold(0.0, nan_max);
        [
            pick(|r| r.curl_div),
            pick(|r| r.vector),
            pick(|r| r.tensor),
            pick(|r| r.spin),
        ]
    });
    ctx.at_most_all(
        [
            ("gen_maxwell_curl_div", 1e-11),
            ("gen_maxwell_vector", 1e-11),
            ("gen_maxwell_tensor", 1e-11),
            ("gen_maxwell_spin", 1e-11),
        ],
        forms,
    );

    let lagrangian = (0..SPECS)
        .map(|_| {
            let f = ctx.spec(SolutionKind::Dirac, m)?.field()?;
            let scale = (f.amplitude_scale() * f.derivative_scale()).max(f64::MIN_POSITIVE);
            let p = ctx.points();
            Ok(p.iter()
                .map(|q| {
                    let jet = f.jet(q.t, &q.x);
                    lagrangian_density(&jet.value, &jet.d, m, None).norm() / scale
                })
                .fold(0.0, nan_max))
        })
        .collect::<Result<Vec<f64>, Error>>()
        .map(|v| v.into_iter().fold(0.0, nan_max));
    ctx.at_most("lagrangian_on_shell", 1e-12, lagrangian);
}

fn transforms(ctx: &mut Ctx) {
    let u = (|| -> Result<[f64; 2], Error> {
        let mut out = [0.0f64; 2];
        for _ in 0..SPECS {
            let spec = ctx.spec(SolutionKind::GenMaxwell, 0.0)?;
            let cal_e = spec.field()?;
            let psi = map_maxwell_to_dirac(&spec)?;
            let p = ctx.points();
            let scale = cal_e.derivative_scale().max(f64::MIN_POSITIVE);
            out[0] = nan_max(out[0], residual_dirac(&psi, 0.0, &p) / scale);
            out[1] = nan_max(out[1], map_dirac_to_maxwell(&psi).max_distance(&cal_e, &p));
        }
        Ok(out)
    })();
    ctx.at_most_all([("u_to_dirac", 1e-10), ("u_round_trip", 1e-13)], u);

    let to_maxwell = (0..SPECS)
        .map(|_| {
            let psi = ctx.spec(SolutionKind::Dirac, 0.0)?.field()?;
            let p = ctx.points();
            let scale = psi.derivative_scale().max(f64::MIN_POSITIVE);
            Ok(residual_gen_maxwell(&map_dirac_to_maxwell(&psi), &p).max() / scale)
        })
        .collect::<Result<Vec<f64>, Error>>()
        .map(|v| v.into_iter().fold(0.0, nan_max));
    ctx.at_most("u_inverse_to_maxwell", 1e-10, to_maxwell);

    let ops = || pgi_operators(&gamma_standard()).map_err(Error::from);
    let bijection = |m: relwave_core::transforms::PgiMatching| {
        if m.is_bijection() {
            m.max_residual()
        } else {
            f64::INFINITY
        }
    };
    let with_scalars = random_em_fields(SPECS, true, &mut ctx.rng);
    let plain = random_em_fields(SPECS, false, &mut ctx.rng);
    let spin = ops()
        .and_then(|ops| Ok(match_pgi(eight_spinorizations, &with_scalars, &ops, 1e-13)?))
        .map(bijection);
    ctx.at_most("spinorization_bijection", 1e-13, spin);
    let cols = ops()
        .and_then(|ops| Ok(match_pgi(|f| sallhofer_columns(f.e, f.h), &plain, &ops, 1e-13)?))
        .map(bijection);
    ctx.at_most("sallhofer_bijection", 1e-13, cols);

    let vacuum = (|| -> Result<f64, Error> {
        let waves = MediumWaves::random(1.0, 1.0, ctx.cfg.modes_count, &mut ctx.rng)?;
        let p = ctx.points();
        worst(0..8, |k| Ok(sallhofer_residual(&waves, &Medium::VACUUM, k, false, &p)?))
    })();
    ctx.at_most("sallhofer_vacuum", 1e-10, vacuum);

    let swap = (|| -> Result<(f64, f64), Error> {
        let (eps, mu) = (2.0, 0.5);
        let medium = Medium::Uniform { eps, mu };
        let waves = MediumWaves::random(eps, mu, ctx.cfg.modes_count, &mut ctx.rng)?;
        let p = ctx.points();
        let mut right: f64 = 0.0;
        let mut wrong = f64::INFINITY;
        for k in 0..8 {
            let need = column_requires_swap(k);
            right = right.max(sallhofer_residual(&waves, &medium, k, need, &p)?);
            wrong = wrong.min(sallhofer_residual(&waves, &medium, k, !need, &p)?);
        }
        Ok((right, wrong))
    })();
    match swap {
        Ok((right, wrong)) => {
            ctx.at_most("sallhofer_swap", 1e-10, Ok(right));
            ctx.above("sallhofer_swap_control", 1e-2, Ok(wrong));
        }
        Err(e) => {
            ctx.checks
                .push(CheckResult::errored("sallhofer_swap", ctx.tol.unwrap_or(1e-10), &e));
            ctx.checks
                .push(CheckResult::errored("sallhofer_swap_control", 1e-2, &e));
        }
    }

    let symbols = (|| -> Result<f64, Error> {
        let cfg = ctx.cfg;
        let profile = MediumProfile::new(cfg.coulomb_z, cfg.charge_e, cfg.mass, cfg.omega_tilde)?;
        let xs: Vec<[f64; 3]> = (0..MODE_SAMPLES)
            .map(|_| loop {
                let x = [0; 3].map(|_| ctx.rng.gen_range(-2.0..2.0));
                if math::hypot3(x) >= 1e-3 {
                    break x;
                }
            })
            .collect();
        let k = [0; 3].map(|_| ctx.rng.gen_range(-2.0..2.0));
        Ok(medium_amplitude_equivalence(&profile, k, &xs)?)
    })();
    ctx.at_most("medium_symbols", 1e-14, symbols);

    let m = ctx.cfg.mass;
    let v_checks = [
        ("v_dirac_image", 1e-11),
        ("v_round_trip", 1e-13),
        ("v_amplitude_norm", 1e-13),
        ("v_intertwining", 1e-11),
    ];
    if m == 0.0 {
        for (name, tol) in v_checks {
            ctx.skip(name, tol, "V requires m > 0");
        }
        return;
    }
    let v = (|| -> Result<[f64; 3], Error> {
        let mut out = [0.0f64; 3];
        for _ in 0..SPECS {
            let sf = SolutionSpec::random(SolutionKind::Sf, m, 8, &mut ctx.rng)?;
            let p = ctx.points();
            let image = apply_v_field(&sf.field()?, m)?;
            let matched = apply_v(&sf)?;
            for q in &p {
                let d = spinor_distance(&image.eval(q.t, &q.x), &eval_dirac(&matched, q.t, &q.x)?);
                out[0] = nan_max(out[0], d);
            }
            let back = apply_v_inv(&matched)?;
            for (a, b) in back.modes().iter().zip(sf.modes()) {
                out[1] = nan_max(out[1], (a.amplitude - b.amplitude).norm());
            }
            out[2] = nan_max(out[2], (amplitude_norm(&matched) - amplitude_norm(&sf)).abs());
        }
        Ok(out)
    })();
    ctx.at_most_all([v_checks[0], v_checks[1], v_checks[2]], v);
    let identity = check_intertwining_identity(INTERTWINING_TRIALS, m, &mut ctx.rng).map_err(Error::from);
    ctx.at_most("v_intertwining", 1e-11, identity);
}

/// Grid geometry taken from the config.
struct Lattice {
    dims: usize,
    n: usize,
    box_len: f64,
}

impl Lattice {
    fn of(cfg: &Config) -> Self {
        Self {
            dims: cfg.grid_dims,
            n: cfg.grid_n(),
            box_len: cfg.grid_box,
        }
    }

    fn spec(&self, kind: SolutionKind, mass: f64, count: usize, rng: &mut ChaCha8Rng) -> Result<SolutionSpec, Error> {
        let bound = LATTICE_INDEX.min(self.n / 2 - 1).max(1);
        lattice_spec(kind, mass, count, self.dims, self.n, self.box_len, bound, rng)
    }

    fn sample(&self, spec: &SolutionSpec, t: f64) -> Result<FieldGrid, Error> {
        FieldGrid::sample(&spec.field()?, t, self.dims, self.n, self.box_len)
    }
}

fn generators(m: f64) -> [(SolutionKind, Generator); 3] {
    [
        (SolutionKind::Sf, Generator::Sf { mass: m }),
        (SolutionKind::Dirac, Generator::Dirac { mass: m }),
        (SolutionKind::GenMaxwell, Generator::GenMaxwell),
    ]
}

fn evolve(ctx: &mut Ctx) {
    let cfg = ctx.cfg;
    let lat = Lattice::of(cfg);
    let sp = Spectral::new(lat.n);
    let (m, t) = (cfg.mass, cfg.time_t);
    let count = cfg.modes_count;

    let sweep = (|| -> Result<[f64; 4], Error> {
        let mut out = [0.0f64; 4];
        for (kind, gen) in generators(m) {
            let mass = if kind == SolutionKind::GenMaxwell { 0.0 } else { m };
            let spec = lat.spec(kind, mass, count, &mut ctx.rng)?;
            let g0 = lat.sample(&spec, 0.0)?;
            let gt = gen.evolve(&sp, &g0, t)?;
            let n0 = g0.norm_sqr().max(f64::MIN_POSITIVE);
            let t1 = 0.37 * t;
            let two = gen.evolve(&sp, &gen.evolve(&sp, &g0, t1)?, t - t1)?;
            let (e1, e2) = fd_errors(&sp, gen, &g0, t, FD_STEP)?;
            let r = [
                (gt.norm_sqr() - n0).abs() / n0,
                gt.max_abs_diff(&lat.sample(&spec, t)?)?,
                two.max_abs_diff(&gt)?,
                (e1 / e2 - 4.0).abs(),
            ];
            for (o, v) in out.iter_mut().zip(r) {
                *o = nan_max(*o, v);
            }
        }
        Ok(out)
    })();
    let names = [
        ("norm_conservation", 1e-11),
        ("grid_vs_analytic", 1e-10),
        ("semigroup", 1e-11),
    ];
    match sweep {
        Ok([a, b, c, d]) => {
            ctx.at_most_all(names, Ok([a, b, c]));
            // |ratio − 4| ≤ 0.5 is a convergence window, not a roundoff
            // tolerance, so overrides do not apply.
            ctx.checks.push(CheckResult::at_most("fd_ratio", d, 0.5));
        }
        Err(e) => {
            ctx.checks.push(CheckResult::errored("fd_ratio", 0.5, &e));
            ctx.at_most_all(names, Err(e));
        }
    }

    let components = (|| -> Result<f64, Error> {
        let k = cfg.grid_components;
        let pts = lat.n.pow(lat.dims as u32);
        let values = (0..k * pts)
            .map(|_| c(ctx.rng.gen_range(-1.0..1.0), ctx.rng.gen_range(-1.0..1.0)))
            .collect();
        let g = FieldGrid::from_values(lat.dims, lat.n, lat.box_len, k, values)?;
        let all = crate::evolve::evolve_sf_grid(&sp, &g, m, t);
        let mut worst: f64 = 0.0;
        for a in 0..k {
            let one = FieldGrid::from_values(
                lat.dims,
                lat.n,
                lat.box_len,
                1,
                g.values()[a * pts..(a + 1) * pts].to_vec(),
            )?;
            let alone = crate::evolve::evolve_sf_grid(&sp, &one, m, t);
            for (x, y) in alone.values().iter().zip(&all.values()[a * pts..(a + 1) * pts]) {
                worst = nan_max(worst, (x - y).norm());
            }
        }
        Ok(worst)
    })();
    ctx.at_most("sf_componentwise", 1e-14, components);

    let source_free = (|| -> Result<f64, Error> {
        // transverse helicity modes carry no scalar pair
        let mut spec = lat.spec(SolutionKind::GenMaxwell, 0.0, count, &mut ctx.rng)?;
        let modes = spec
            .modes()
            .iter()
            .map(|md| relwave_core::solutions::Mode {
                branch: 1 + (md.branch - 1) % 2,
                ..*md
            })
            .collect();
        spec = SolutionSpec::new(SolutionKind::GenMaxwell, 0.0, modes)?;
        let g0 = lat.sample(&spec, 0.0)?;
        let gt = evolve_gen_maxwell_grid(&sp, &g0, t)?;
        let pts = g0.points();
        let initial = (0..pts).map(|i| g0.get(3, i).norm()).fold(0.0, f64::max);
        let evolved = (0..pts).map(|i| gt.get(3, i).norm()).fold(0.0, f64::max);
        Ok(initial.max(evolved))
    })();
    ctx.at_most("source_free", 1e-11, source_free);

    let u = (|| -> Result<f64, Error> {
        let spec = lat.spec(SolutionKind::GenMaxwell, 0.0, count, &mut ctx.rng)?;
        u_diagram(&sp, &lat.sample(&spec, 0.0)?, t)
    })();
    ctx.at_most("u_diagram", 1e-10, u);
    if m == 0.0 {
        ctx.skip("v_diagram", 1e-10, "V requires m > 0");
    } else {
        let v = (|| -> Result<f64, Error> {
            let spec = lat.spec(SolutionKind::Sf, m, count, &mut ctx.rng)?;
            v_diagram(&sp, &lat.sample(&spec, 0.0)?, m, t)
        })();
        ctx.at_most("v_diagram", 1e-10, v);
    }
}
