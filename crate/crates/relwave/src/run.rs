//! The `evolve` verb: sample a spec on a grid, advance it, write dumps and
//! report on the run.

use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relwave_core::solutions::{SolutionKind, SolutionSpec};

use crate::config::Config;
use crate::dump::save_dump;
use crate::evolve::{lattice_spec, u_diagram, v_diagram, FieldGrid, Generator, Spectral};
use crate::report::{CheckResult, SuiteReport};
use crate::Error;

/// Lattice index bound for generated specs.
const GENERATED_INDEX: usize = 4;

/// Files written by [`run_evolution`].
#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionOutput {
    pub report: SuiteReport,
    pub dumps: Vec<PathBuf>,
}

/// Whether every wave vector of `spec` lies on the grid lattice.
fn on_lattice(spec: &SolutionSpec, dims: usize, n: usize, box_len: f64) -> bool {
    let scale = box_len / (2.0 * std::f64::consts::PI);
    spec.modes().iter().all(|m| {
        m.k.iter().enumerate().all(|(axis, &k)| {
            let j = k * scale;
            if axis >= dims {
                return k == 0.0;
            }
            (j - j.round()).abs() <= 1e-9 && j.round() >= -(n as f64) / 2.0 && j.round() < n as f64 / 2.0
        })
    })
}

fn generated_spec(kind: SolutionKind, mass: f64, cfg: &Config, rng: &mut ChaCha8Rng) -> Result<SolutionSpec, Error> {
    let n = cfg.grid_n();
    let bound = GENERATED_INDEX.min(n / 2 - 1).max(1);
    lattice_spec(kind, mass, cfg.modes_count, cfg.grid_dims, n, cfg.grid_box, bound, rng)
}

/// Runs one evolution into `out_dir`. Without `spec`, a random
/// lattice-aligned spec of the configured kind is generated from the seed.
///
/// Writes `input.rwf` (t = 0), `step_NNNN.rwf` for each of `time.steps`
/// equal steps up to `time.t`, and `output.rwf`. With zero steps nothing is
/// evolved and `output.rwf` repeats the input.
pub fn run_evolution(cfg: &Config, spec: Option<SolutionSpec>, out_dir: &Path) -> Result<EvolutionOutput, Error> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let spec = match spec {
        Some(s) => s,
        None => {
            let mass = if cfg.evolve_kind == SolutionKind::GenMaxwell {
                0.0
            } else {
                cfg.mass
            };
            generated_spec(cfg.evolve_kind, mass, cfg, &mut rng)?
        }
    };
    let (dims, n, box_len) = (cfg.grid_dims, cfg.grid_n(), cfg.grid_box);
    let gen = Generator::for_kind(spec.kind(), spec.mass());
    let sp = Spectral::new(n);
    let input = FieldGrid::sample(&spec.field()?, 0.0, dims, n, box_len)?;

    std::fs::create_dir_all(out_dir)?;
    let mut dumps = Vec::new();
    let mut dump = |name: String, grid: &FieldGrid, t: f64| -> Result<(), Error> {
        let path = out_dir.join(name);
        save_dump(&path, grid, t)?;
        dumps.push(path);
        Ok(())
    };
    dump("input.rwf".into(), &input, 0.0)?;

    let steps = cfg.time_steps;
    let mut current = input.clone();
    let mut t_now = 0.0;
    for s in 1..=steps {
        let t_next = cfg.time_t * s as f64 / steps as f64;
        current = gen.evolve(&sp, &current, t_next - t_now)?;
        t_now = t_next;
        dump(format!("step_{s:04}.rwf"), &current, t_now)?;
    }
    dump("output.rwf".into(), &current, t_now)?;

    let tol = |d: f64| cfg.suite_tolerance("evolve").unwrap_or(d);
    let mut checks = Vec::new();
    let n0 = input.norm_sqr().max(f64::MIN_POSITIVE);
    checks.push(CheckResult::at_most(
        "norm_conservation",
        (current.norm_sqr() - n0).abs() / n0,
        tol(1e-11),
    ));
    if on_lattice(&spec, dims, n, box_len) {
        let exact = FieldGrid::sample(&spec.field()?, t_now, dims, n, box_len)?;
        checks.push(CheckResult::at_most(
            "grid_vs_analytic",
            current.max_abs_diff(&exact)?,
            tol(1e-10),
        ));
    } else {
        checks.push(CheckResult::skipped(
            "grid_vs_analytic",
            tol(1e-10),
            "spec has wave vectors off the grid lattice",
        ));
    }

    if cfg.evolve_diagrams {
        let t = cfg.time_t;
        let cal_e = if spec.kind() == SolutionKind::GenMaxwell {
            input.clone()
        } else {
            let s = generated_spec(SolutionKind::GenMaxwell, 0.0, cfg, &mut rng)?;
            FieldGrid::sample(&s.field()?, 0.0, dims, n, box_len)?
        };
        checks.push(CheckResult::at_most(
            "u_diagram",
            u_diagram(&sp, &cal_e, t)?,
            tol(1e-10),
        ));
        let m = if spec.kind() == SolutionKind::GenMaxwell {
            cfg.mass
        } else {
            spec.mass()
        };
        if m > 0.0 {
            let f = if spec.kind() == SolutionKind::Sf {
                input.clone()
            } else {
                let s = generated_spec(SolutionKind::Sf, m, cfg, &mut rng)?;
                FieldGrid::sample(&s.field()?, 0.0, dims, n, box_len)?
            };
            checks.push(CheckResult::at_most("v_diagram", v_diagram(&sp, &f, m, t)?, tol(1e-10)));
        } else {
            checks.push(CheckResult::skipped("v_diagram", tol(1e-10), "V requires m > 0"));
        }
    }
    Ok(EvolutionOutput {
        report: SuiteReport::new("evolve_run", cfg.seed, cfg.tol, checks),
        dumps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dump::load_dump;
    use relwave_core::solutions::Mode;

    fn small(kind: SolutionKind) -> Config {
        Config {
            grid_n: Some(64),
            evolve_kind: kind,
            evolve_diagrams: true,
            time_steps: 3,
            ..Config::default()
        }
    }

    #[test]
    fn sf_run_writes_dumps_and_passes() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_evolution(&small(SolutionKind::Sf), None, dir.path()).unwrap();
        assert!(out.report.pass, "{}", out.report.summary());
        assert_eq!(out.dumps.len(), 5);
        let (g, t) = load_dump(&dir.path().join("output.rwf")).unwrap();
        assert_eq!((g.dims(), g.n(), g.components(), t), (1, 64, 4, 1.0));
        assert!(out.report.check("v_diagram").unwrap().max_residual <= 1e-10);
    }

    #[test]
    fn maxwell_run_with_massless_config_skips_v() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = Config {
            mass: 0.0,
            ..small(SolutionKind::GenMaxwell)
        };
        let out = run_evolution(&cfg, None, dir.path()).unwrap();
        assert!(out.report.pass, "{}", out.report.summary());
        assert!(out.report.check("v_diagram").unwrap().skipped.is_some());
    }

    #[test]
    fn off_lattice_spec_skips_the_analytic_comparison() {
        let dir = tempfile::tempdir().unwrap();
        let spec = SolutionSpec::new(
            SolutionKind::Dirac,
            1.0,
            vec![Mode {
                k: [0.5, 0.0, 0.0],
                branch: 1,
                amplitude: relwave_core::linalg::ONE,
            }],
        )
        .unwrap();
        let cfg = Config {
            evolve_diagrams: false,
            ..small(SolutionKind::Dirac)
        };
        let out = run_evolution(&cfg, Some(spec), dir.path()).unwrap();
        assert!(out.report.check("grid_vs_analytic").unwrap().skipped.is_some());
        assert!(out.report.check("norm_conservation").unwrap().pass);
    }
}
