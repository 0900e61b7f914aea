//! Flat `key = value` run configuration. Blank lines and `#` comments are
//! ignored; unknown keys are rejected.

use relwave_core::solutions::SolutionKind;

use crate::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub mass: f64,
    pub charge_e: f64,
    pub seed: u64,
    pub tol_algebra: Option<f64>,
    pub tol_modes: Option<f64>,
    pub tol_solutions: Option<f64>,
    pub tol_transforms: Option<f64>,
    pub tol_evolve: Option<f64>,
    /// Overrides every per-check tolerance when set.
    pub tol: Option<f64>,
    pub modes_count: usize,
    pub samples_count: usize,
    pub grid_dims: usize,
    /// Defaults to 1024 in 1-D and 32 in 3-D.
    pub grid_n: Option<usize>,
    pub grid_box: f64,
    pub grid_components: usize,
    pub time_t: f64,
    pub time_steps: usize,
    pub coulomb_z: f64,
    pub omega_tilde: f64,
    pub evolve_kind: SolutionKind,
    pub evolve_diagrams: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            mass: 1.0,
            charge_e: 1.0,
            seed: 42,
            tol_algebra: None,
            tol_modes: None,
            tol_solutions: None,
            tol_transforms: None,
            tol_evolve: None,
            tol: None,
            modes_count: 5,
            samples_count: 20,
            grid_dims: 1,
            grid_n: None,
            grid_box: 2.0 * std::f64::consts::PI,
            grid_components: 4,
            time_t: 1.0,
            time_steps: 1,
            coulomb_z: 1.0,
            omega_tilde: 1.0,
            evolve_kind: SolutionKind::Sf,
            evolve_diagrams: false,
        }
    }
}

fn num<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value `{value}` for `{key}`")))
}

fn tol(key: &str, value: &str) -> Result<Option<f64>, Error> {
    let v: f64 = num(key, value)?;
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::Config(format!("tolerance `{key}` must be positive")));
    }
    Ok(Some(v))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let (k, v) = body.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                msg: format!("expected `key = value`, found `{body}`"),
            })?;
            cfg.set(k.trim(), v.trim())?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        match key {
            "mass" => self.mass = num(key, value)?,
            "charge_e" => self.charge_e = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "tol.algebra" => self.tol_algebra = tol(key, value)?,
            "tol.modes" => self.tol_modes = tol(key, value)?,
            "tol.solutions" => self.tol_solutions = tol(key, value)?,
            "tol.transforms" => self.tol_transforms = tol(key, value)?,
            "tol.evolve" => self.tol_evolve = tol(key, value)?,
            "modes.count" => self.modes_count = num(key, value)?,
            "samples.count" => self.samples_count = num(key, value)?,
            "grid.dims" => self.grid_dims = num(key, value)?,
            "grid.n" => self.grid_n = Some(num(key, value)?),
            "grid.box" => self.grid_box = num(key, value)?,
            "grid.components" => self.grid_components = num(key, value)?,
            "time.t" => self.time_t = num(key, value)?,
            "time.steps" => self.time_steps = num(key, value)?,
            "coulomb.Z" => self.coulomb_z = num(key, value)?,
            "omega_tilde" => self.omega_tilde = num(key, value)?,
            "evolve.kind" => {
                self.evolve_kind =
                    SolutionKind::from_name(value).ok_or_else(|| Error::Config(format!("unknown kind `{value}`")))?
            }
            "evolve.diagrams" => self.evolve_diagrams = num(key, value)?,
            _ => return Err(Error::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.mass.is_finite() && self.mass >= 0.0) {
            return Err(Error::Config(format!(
                "mass must be finite and >= 0, got {}",
                self.mass
            )));
        }
        if self.grid_dims != 1 && self.grid_dims != 3 {
            return Err(Error::Config(format!(
                "grid.dims must be 1 or 3, got {}",
                self.grid_dims
            )));
        }
        if self.samples_count == 0 {
            return Err(Error::Config("samples.count must be positive".into()));
        }
        if !self.time_t.is_finite() {
            return Err(Error::Config("time.t must be finite".into()));
        }
        Ok(())
    }

    pub fn grid_n(&self) -> usize {
        self.grid_n.unwrap_or(if self.grid_dims == 1 { 1024 } else { 32 })
    }

    /// Tolerance override for `suite`, if any: the global one wins.
    pub fn suite_tolerance(&self, suite: &str) -> Option<f64> {
        self.tol.or(match suite {
            "algebra" => self.tol_algebra,
            "modes" => self.tol_modes,
            "solutions" => self.tol_solutions,
            "transforms" => self.tol_transforms,
            "evolve" => self.tol_evolve,
            _ => None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_keys_and_comments() {
        let c = Config::parse("# run\nmass = 0.5\nseed=7\ntol.algebra = 1e-12\ngrid.dims = 3\nevolve.kind = DIRAC\nevolve.diagrams = true\n").unwrap();
        assert_eq!(c.mass, 0.5);
        assert_eq!(c.seed, 7);
        assert_eq!(c.suite_tolerance("algebra"), Some(1e-12));
        assert_eq!(c.suite_tolerance("modes"), None);
        assert_eq!(c.grid_n(), 32);
        assert_eq!(c.evolve_kind, SolutionKind::Dirac);
        assert!(c.evolve_diagrams);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Config::parse("colour = red"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("mass 1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(Config::parse("mass = -1"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("tol.solutions = 0"), Err(Error::Config(_))));
        assert!(matches!(Config::parse("grid.dims = 2"), Err(Error::Config(_))));
    }

    #[test]
    fn global_tolerance_wins() {
        let mut c = Config::parse("tol.evolve = 1e-9").unwrap();
        c.tol = Some(1e-3);
        assert_eq!(c.suite_tolerance("evolve"), Some(1e-3));
    }
}
