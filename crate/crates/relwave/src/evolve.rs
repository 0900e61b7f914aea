//! Spectral evolution on periodic grids.
//!
//! Each Fourier mode is advanced by its exact propagator, so the only error is
//! transform roundoff. Values are stored component-major with `x` fastest; the
//! lattice wave vectors are `2πj/L`, `j ∈ [−n/2, n/2)`.

use std::sync::Arc;

use rand::Rng;
use relwave_core::algebra::{gamma_standard_matrices, spin1_generators};
use relwave_core::linalg::{c, ComplexMatrix, RealLinearOperator, C64, ZERO};
use relwave_core::math;
use relwave_core::propagator::{dirac_propagator, sf_phase};
use relwave_core::solutions::{Mode, ModeSum, SolutionKind, SolutionSpec};
use relwave_core::transforms::{u_inverse, u_operator};
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::Error;

/// Complex field values on an `n`-point periodic lattice in 1 or 3 dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    dims: usize,
    n: usize,
    box_len: f64,
    components: usize,
    values: Vec<C64>,
}

impl FieldGrid {
    pub fn zeros(dims: usize, n: usize, box_len: f64, components: usize) -> Result<Self, Error> {
        if dims != 1 && dims != 3 {
            return Err(Error::Grid(format!("dims must be 1 or 3, got {dims}")));
        }
        if n < 2 || !n.is_power_of_two() {
            return Err(Error::Grid(format!("n must be a power of two >= 2, got {n}")));
        }
        if !(box_len.is_finite() && box_len > 0.0) {
            return Err(Error::Grid(format!("box length must be positive, got {box_len}")));
        }
        if components == 0 {
            return Err(Error::Grid("at least one component is required".into()));
        }
        let len = components * n.pow(dims as u32);
        Ok(Self {
            dims,
            n,
            box_len,
            components,
            values: vec![ZERO; len],
        })
    }

    pub fn from_values(
        dims: usize,
        n: usize,
        box_len: f64,
        components: usize,
        values: Vec<C64>,
    ) -> Result<Self, Error> {
        let mut g = Self::zeros(dims, n, box_len, components)?;
        if values.len() != g.values.len() {
            return Err(Error::Grid(format!(
                "expected {} values, got {}",
                g.values.len(),
                values.len()
            )));
        }
        g.values = values;
        Ok(g)
    }

    /// Samples a plane-wave sum (4 components) at time `t`.
    pub fn sample(field: &ModeSum, t: f64, dims: usize, n: usize, box_len: f64) -> Result<Self, Error> {
        let mut g = Self::zeros(dims, n, box_len, 4)?;
        let pts = g.points();
        for i in 0..pts {
            let v = field.eval(t, &g.position(i));
            for (a, z) in v.into_iter().enumerate() {
                g.values[a * pts + i] = z;
            }
        }
        Ok(g)
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn box_len(&self) -> f64 {
        self.box_len
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Lattice points per component.
    pub fn points(&self) -> usize {
        self.n.pow(self.dims as u32)
    }

    fn axis_index(&self, i: usize) -> [usize; 3] {
        let n = self.n;
        match self.dims {
            1 => [i, 0, 0],
            _ => [i % n, (i / n) % n, i / (n * n)],
        }
    }

    /// Position of lattice point `i`.
    pub fn position(&self, i: usize) -> [f64; 3] {
        let h = self.box_len / self.n as f64;
        self.axis_index(i).map(|j| j as f64 * h)
    }

    /// Wave vector of Fourier index `i`.
    pub fn wavevector(&self, i: usize) -> [f64; 3] {
        let n = self.n as i64;
        let scale = 2.0 * std::f64::consts::PI / self.box_len;
        let idx = self.axis_index(i);
        let mut q = [0.0; 3];
        for d in 0..self.dims {
            let j = idx[d] as i64;
            let j = if j < n / 2 { j } else { j - n };
            q[d] = scale * j as f64;
        }
        q
    }

    /// `Σ |values|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `max |a − b|` over all entries.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64, Error> {
        self.check_shape(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn check_shape(&self, other: &Self) -> Result<(), Error> {
        if (self.dims, self.n, self.components) != (other.dims, other.n, other.components)
            || self.box_len != other.box_len
        {
            return Err(Error::Grid("grid shapes differ".into()));
        }
        Ok(())
    }

    fn require_components(&self, k: usize) -> Result<(), Error> {
        if self.components != k {
            return Err(Error::Grid(format!("expected {k} components, got {}", self.components)));
        }
        Ok(())
    }

    /// Component `a` at lattice point `i`.
    pub fn get(&self, a: usize, i: usize) -> C64 {
        self.values[a * self.points() + i]
    }

    /// Applies `x -> A x + B conj(x)` at every lattice point.
    pub fn apply_pointwise(&self, op: &RealLinearOperator) -> Result<Self, Error> {
        if op.dim() != self.components {
            return Err(Error::Grid("operator and grid dimensions differ".into()));
        }
        let pts = self.points();
        let k = self.components;
        let mut out = self.clone();
        let mut x = vec![ZERO; k];
        for i in 0..pts {
            for a in 0..k {
                x[a] = self.values[a * pts + i];
            }
            let y = op.apply(&x)?;
            for a in 0..k {
                out.values[a * pts + i] = y[a];
            }
        }
        Ok(out)
    }
}

/// Forward and inverse FFTs along every axis of a [`FieldGrid`].
pub struct Spectral {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    n: usize,
}

impl Spectral {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft(n, FftDirection::Forward),
            inverse: planner.plan_fft(n, FftDirection::Inverse),
            n,
        }
    }

    fn transform(&self, grid: &mut FieldGrid, fft: &dyn Fft<f64>) {
        assert_eq!(grid.n, self.n, "planner built for another size");
        let n = self.n;
        let pts = grid.points();
        let mut line = vec![ZERO; n];
        let mut scratch = vec![ZERO; fft.get_inplace_scratch_len()];
        for comp in grid.values.chunks_mut(pts) {
            for axis in 0..grid.dims {
                let stride = n.pow(axis as u32);
                let lines = pts / n;
                for l in 0..lines {
                    // start of line l along `axis`
                    let base = (l / stride) * stride * n + l % stride;
                    for (j, z) in line.iter_mut().enumerate() {
                        *z = comp[base + j * stride];
                    }
                    fft.process_with_scratch(&mut line, &mut scratch);
                    for (j, z) in line.iter().enumerate() {
                        comp[base + j * stride] = *z;
                    }
                }
            }
        }
    }

    /// Unnormalized forward transform (`e^{−2πi jk/n}` kernel).
    pub fn forward(&self, grid: &mut FieldGrid) {
        let f = Arc::clone(&self.forward);
        self.transform(grid, f.as_ref());
    }

    /// Inverse transform including the `1/n^dims` factor.
    pub fn inverse(&self, grid: &mut FieldGrid) {
        let f = Arc::clone(&self.inverse);
        self.transform(grid, f.as_ref());
        let s = 1.0 / grid.points() as f64;
        for z in &mut grid.values {
            *z *= s;
        }
    }

    /// Transforms `grid`, multiplies each Fourier point's component vector by
    /// `symbol(q)`, and transforms back.
    pub fn apply_symbol(
        &self,
        grid: &FieldGrid,
        symbol: impl Fn([f64; 3]) -> ComplexMatrix,
    ) -> Result<FieldGrid, Error> {
        let mut g = grid.clone();
        self.forward(&mut g);
        let pts = g.points();
        let k = g.components;
        let mut x = vec![ZERO; k];
        for i in 0..pts {
            let m = symbol(g.wavevector(i));
            if m.rows() != k || m.cols() != k {
                return Err(Error::Grid("symbol size does not match the component count".into()));
            }
            for a in 0..k {
                x[a] = g.values[a * pts + i];
            }
            let y = m.mul_vec(&x)?;
            for a in 0..k {
                g.values[a * pts + i] = y[a];
            }
        }
        self.inverse(&mut g);
        Ok(g)
    }

    /// Same as [`Spectral::apply_symbol`] for a scalar symbol acting on every component.
    pub fn apply_scalar_symbol(&self, grid: &FieldGrid, symbol: impl Fn([f64; 3]) -> C64) -> FieldGrid {
        let mut g = grid.clone();
        self.forward(&mut g);
        let pts = g.points();
        for i in 0..pts {
            let s = symbol(g.wavevector(i));
            for a in 0..g.components {
                g.values[a * pts + i] *= s;
            }
        }
        self.inverse(&mut g);
        g
    }
}

/// `i∂_t f = √(m² − Δ) f`, any number of components.
pub fn evolve_sf_grid(sp: &Spectral, grid: &FieldGrid, m: f64, t: f64) -> FieldGrid {
    sp.apply_scalar_symbol(grid, |q| sf_phase(q, m, t))
}

/// `i∂_t ψ = (α·p̂ + βm) ψ`.
pub fn evolve_dirac_grid(sp: &Spectral, grid: &FieldGrid, m: f64, t: f64) -> Result<FieldGrid, Error> {
    grid.require_components(4)?;
    sp.apply_symbol(grid, |q| dirac_propagator(q, m, t))
}

/// Generalized Maxwell evolution of `𝓔`, carried out as `U⁻¹ ∘ (massless Dirac) ∘ U`.
pub fn evolve_gen_maxwell_grid(sp: &Spectral, grid: &FieldGrid, t: f64) -> Result<FieldGrid, Error> {
    grid.require_components(4)?;
    let psi = grid.apply_pointwise(&u_operator())?;
    let psi_t = evolve_dirac_grid(sp, &psi, 0.0, t)?;
    psi_t.apply_pointwise(&u_inverse())
}

/// `M(q)` with `i∂₀𝓔 = M 𝓔` on `e^{iq·x}`, read off the spin-1 form of the
/// generalized Maxwell system: `M = [[−S·q, q], [qᵀ, 0]]`.
pub fn gen_maxwell_symbol(q: [f64; 3]) -> ComplexMatrix {
    let s = spin1_generators();
    let mut rows = [[ZERO; 4]; 4];
    for a in 0..3 {
        for b in 0..3 {
            rows[a][b] = -(0..3).map(|j| s[j].get(a, b) * q[j]).sum::<C64>();
        }
        rows[a][3] = c(q[a], 0.0);
        rows[3][a] = c(q[a], 0.0);
    }
    ComplexMatrix::from_rows(rows)
}

/// Direct evolution of `𝓔` with `exp(−iMt) = cos(|q|t) − i sin(|q|t)/|q| M`,
/// independent of `U`.
pub fn evolve_gen_maxwell_direct(sp: &Spectral, grid: &FieldGrid, t: f64) -> Result<FieldGrid, Error> {
    grid.require_components(4)?;
    sp.apply_symbol(grid, |q| {
        let w = math::hypot3(q);
        let (s, co) = math::sin_cos(w * t);
        let sinc = if w == 0.0 { t } else { s / w };
        &ComplexMatrix::identity(4).scale(c(co, 0.0)) + &gen_maxwell_symbol(q).scale(c(0.0, -sinc))
    })
}

/// Which generator a grid is evolved with.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Generator {
    Sf { mass: f64 },
    Dirac { mass: f64 },
    GenMaxwell,
}

impl Generator {
    pub fn for_kind(kind: SolutionKind, mass: f64) -> Self {
        match kind {
            SolutionKind::Sf => Generator::Sf { mass },
            SolutionKind::Dirac => Generator::Dirac { mass },
            SolutionKind::GenMaxwell => Generator::GenMaxwell,
        }
    }

    pub fn evolve(&self, sp: &Spectral, grid: &FieldGrid, t: f64) -> Result<FieldGrid, Error> {
        match *self {
            Generator::Sf { mass } => Ok(evolve_sf_grid(sp, grid, mass, t)),
            Generator::Dirac { mass } => evolve_dirac_grid(sp, grid, mass, t),
            Generator::GenMaxwell => evolve_gen_maxwell_grid(sp, grid, t),
        }
    }

    /// `G f` with `∂_t f = −i G f`, applied spectrally.
    pub fn apply(&self, sp: &Spectral, grid: &FieldGrid) -> Result<FieldGrid, Error> {
        match *self {
            Generator::Sf { mass } => Ok(sp.apply_scalar_symbol(grid, |q| c(math::omega(q, mass), 0.0))),
            Generator::Dirac { mass } => {
                grid.require_components(4)?;
                sp.apply_symbol(grid, |q| relwave_core::algebra::dirac_hamiltonian(q, mass))
            }
            Generator::GenMaxwell => {
                grid.require_components(4)?;
                sp.apply_symbol(grid, gen_maxwell_symbol)
            }
        }
    }
}

/// `V` on a grid: conjugate the lower components pointwise, then apply
/// `(−γ·q + ω̂ + m)/√(2ω̂(ω̂ + m))` per Fourier mode.
pub fn apply_v_grid(sp: &Spectral, grid: &FieldGrid, m: f64) -> Result<FieldGrid, Error> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::Core(relwave_core::Error::MasslessUnsupported));
    }
    grid.require_components(4)?;
    let conj = grid.apply_pointwise(&relwave_core::algebra::block_conjugation())?;
    let g = gamma_standard_matrices();
    sp.apply_symbol(&conj, |q| {
        let w = math::omega(q, m);
        let n = 1.0 / math::sqrt(2.0 * w * (w + m));
        let mut s = ComplexMatrix::identity(4).scale(c((w + m) * n, 0.0));
        for l in 0..3 {
            s = &s + &g[l + 1].scale(c(-q[l] * n, 0.0));
        }
        s
    })
}

/// Random spec whose wave vectors lie on the grid's lattice, with lattice
/// indices `|j| <= max_index` per axis (only the first axis in 1-D). Massless
/// specs avoid `k = 0`.
#[allow(clippy::too_many_arguments)]
pub fn lattice_spec<R: Rng + ?Sized>(
    kind: SolutionKind,
    mass: f64,
    count: usize,
    dims: usize,
    n: usize,
    box_len: f64,
    max_index: usize,
    rng: &mut R,
) -> Result<SolutionSpec, Error> {
    if max_index == 0 || max_index >= n / 2 {
        return Err(Error::Grid(format!(
            "lattice index bound {max_index} must be in 1..{}",
            n / 2
        )));
    }
    let scale = 2.0 * std::f64::consts::PI / box_len;
    let half = max_index as i64;
    let modes = (0..count)
        .map(|_| loop {
            let mut k = [0.0; 3];
            for v in k.iter_mut().take(dims) {
                *v = scale * rng.gen_range(-half..=half) as f64;
            }
            if mass == 0.0 && k == [0.0; 3] {
                continue;
            }
            break Mode {
                k,
                branch: rng.gen_range(1..=4),
                amplitude: c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            };
        })
        .collect();
    Ok(SolutionSpec::new(kind, mass, modes)?)
}

/// `‖map(evolve(f, t)) − evolve'(map(f), t)‖_∞` for the two correspondences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagramResiduals {
    /// `U ∘ (generalized Maxwell, direct)` against `(massless Dirac) ∘ U`.
    pub u: f64,
    /// `V ∘ SF` against `Dirac ∘ V`; `None` when `m = 0`.
    pub v: Option<f64>,
}

/// U diagram on a sampled 𝓔 grid.
pub fn u_diagram(sp: &Spectral, cal_e: &FieldGrid, t: f64) -> Result<f64, Error> {
    let u = u_operator();
    let top = evolve_gen_maxwell_direct(sp, cal_e, t)?.apply_pointwise(&u)?;
    let bottom = evolve_dirac_grid(sp, &cal_e.apply_pointwise(&u)?, 0.0, t)?;
    top.max_abs_diff(&bottom)
}

/// V diagram on a sampled SF grid with `m > 0`.
pub fn v_diagram(sp: &Spectral, f: &FieldGrid, m: f64, t: f64) -> Result<f64, Error> {
    let top = apply_v_grid(sp, &evolve_sf_grid(sp, f, m, t), m)?;
    let bottom = evolve_dirac_grid(sp, &apply_v_grid(sp, f, m)?, m, t)?;
    top.max_abs_diff(&bottom)
}

/// Finite-difference errors `‖(f(t+h) − f(t−h))/2h + i G f(t)‖_∞` for `h` and `h/2`.
pub fn fd_errors(sp: &Spectral, gen: Generator, f: &FieldGrid, t: f64, h: f64) -> Result<(f64, f64), Error> {
    let ft = gen.evolve(sp, f, t)?;
    let gf = gen.apply(sp, &ft)?;
    let err = |h: f64| -> Result<f64, Error> {
        let plus = gen.evolve(sp, f, t + h)?;
        let minus = gen.evolve(sp, f, t - h)?;
        let worst = plus
            .values
            .iter()
            .zip(&minus.values)
            .zip(&gf.values)
            .map(|((p, m), g)| ((p - m) / (2.0 * h) + c(0.0, 1.0) * g).norm())
            .fold(0.0, f64::max);
        Ok(worst)
    };
    Ok((err(h)?, err(h / 2.0)?))
}
