//! Dense complex matrices and real-linear operators.
//!
//! A [`RealLinearOperator`] acts as `x -> A x + B conj(x)`. Linear operators
//! have `B = 0`, antilinear ones (anything of the form `M C` with `C` complex
//! conjugation) have `A = 0`, and maps such as `U` that mix `C + 1` and
//! `C - 1` entries carry both parts. The pair is closed under composition and
//! adjoint, which is all the operator algebra the crate needs.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::math;

pub type C64 = num_complex::Complex64;

/// Four complex components; the working vector type for spinors and `𝓔`.
pub type Spinor = [C64; 4];

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_finite(data: &[C64], what: &'static str) -> Result<()> {
    if data.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

/// Row-major dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter("matrix dimensions must be positive"));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        check_finite(&data, "matrix entries")?;
        Ok(Self { rows, cols, data })
    }

    /// Builds a square matrix from rows. Panics on ragged or non-finite input;
    /// meant for the fixed tables in this crate.
    pub fn from_rows<const N: usize>(rows: [[C64; N]; N]) -> Self {
        let data: Vec<C64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::new(N, N, data).expect("literal matrix")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diag(&vec![ONE; n])
    }

    pub fn from_diag(diag: &[C64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * n + i] = d;
        }
        m
    }

    /// `[[a, b], [c, d]]` assembled from four equally sized square blocks.
    pub fn block2(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let n = a.rows;
        let mut m = Self::zeros(2 * n, 2 * n);
        for (bi, bj, blk) in [(0, 0, a), (0, 1, b), (1, 0, c), (1, 1, d)] {
            for i in 0..n {
                for j in 0..n {
                    m.data[(bi * n + i) * 2 * n + bj * n + j] = blk.get(i, j);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.cols + c]
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| f(z)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.transpose().conj()
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map(|z| z * s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        Ok(out)
    }

    fn zip(&self, rhs: &Self, f: impl Fn(C64, C64) -> C64) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: rhs.rows * rhs.cols,
            });
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, |a, b| a - b)
    }

    /// `‖self − rhs‖_F`.
    pub fn distance(&self, rhs: &Self) -> Result<f64> {
        Ok(self.try_sub(rhs)?.frobenius_norm())
    }

    /// `A B + B A`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_add(&rhs.try_mul(self)?)
    }

    /// `A B − B A`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    pub fn mul_vec(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.data[r * self.cols..(r + 1) * self.cols]
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Fixed-size product for the 4×4 case used in inner loops.
    pub fn mul_spinor(&self, x: &Spinor) -> Spinor {
        debug_assert!(self.rows == 4 && self.cols == 4);
        let mut out = [ZERO; 4];
        for (r, o) in out.iter_mut().enumerate() {
            let row = &self.data[r * 4..r * 4 + 4];
            *o = row[0] * x[0] + row[1] * x[1] + row[2] * x[2] + row[3] * x[3];
        }
        out
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_add(rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.try_sub(rhs).expect("matrix difference dimension mismatch")
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        self.map(|z| -z)
    }
}

/// The operator `x -> A x + B conj(x)` on `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealLinearOperator {
    linear: ComplexMatrix,
    antilinear: ComplexMatrix,
}

impl RealLinearOperator {
    pub fn new(linear: ComplexMatrix, antilinear: ComplexMatrix) -> Result<Self> {
        if !linear.is_square() {
            return Err(Error::NotSquare {
                rows: linear.rows,
                cols: linear.cols,
            });
        }
        if !antilinear.is_square() {
            return Err(Error::NotSquare {
                rows: antilinear.rows,
                cols: antilinear.cols,
            });
        }
        if linear.rows != antilinear.rows {
            return Err(Error::DimensionMismatch {
                expected: linear.rows,
                found: antilinear.rows,
            });
        }
        Ok(Self { linear, antilinear })
    }

    /// `x -> M x`.
    pub fn linear(m: ComplexMatrix) -> Self {
        let n = m.rows;
        Self::new(m, ComplexMatrix::zeros(n, n)).expect("square matrix")
    }

    /// `x -> M conj(x)`, i.e. `M C`.
    pub fn antilinear(m: ComplexMatrix) -> Self {
        let n = m.rows;
        Self::new(ComplexMatrix::zeros(n, n), m).expect("square matrix")
    }

    pub fn identity(n: usize) -> Self {
        Self::linear(ComplexMatrix::identity(n))
    }

    /// Complex conjugation `C`.
    pub fn conjugation(n: usize) -> Self {
        Self::antilinear(ComplexMatrix::identity(n))
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.linear.rows
    }

    pub fn linear_part(&self) -> &ComplexMatrix {
        &self.linear
    }

    pub fn antilinear_part(&self) -> &ComplexMatrix {
        &self.antilinear
    }

    pub fn is_linear(&self) -> bool {
        self.antilinear.data.iter().all(|&z| z == ZERO)
    }

    pub fn is_antilinear(&self) -> bool {
        self.linear.data.iter().all(|&z| z == ZERO)
    }

    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>> {
        let xc: Vec<C64> = x.iter().map(|z| z.conj()).collect();
        let a = self.linear.mul_vec(x)?;
        let b = self.antilinear.mul_vec(&xc)?;
        Ok(a.into_iter().zip(b).map(|(p, q)| p + q).collect())
    }

    pub fn apply_spinor(&self, x: &Spinor) -> Spinor {
        let xc = x.map(|z| z.conj());
        let a = self.linear.mul_spinor(x);
        let b = self.antilinear.mul_spinor(&xc);
        [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
    }

    /// The operator `second ∘ first`, i.e. apply `first`, then `second`.
    ///
    /// With `first = (A2, B2)` and `second = (A1, B1)` the result is
    /// `(A1 A2 + B1 conj(B2), A1 B2 + B1 conj(A2))`.
    pub fn compose(first: &Self, second: &Self) -> Result<Self> {
        if first.dim() != second.dim() {
            return Err(Error::DimensionMismatch {
                expected: second.dim(),
                found: first.dim(),
            });
        }
        let (a1, b1) = (&second.linear, &second.antilinear);
        let (a2, b2) = (&first.linear, &first.antilinear);
        let linear = (a1 * a2).try_add(&(b1 * &b2.conj()))?;
        let antilinear = (a1 * b2).try_add(&(b1 * &a2.conj()))?;
        Self::new(linear, antilinear)
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn after(&self, inner: &Self) -> Result<Self> {
        Self::compose(inner, self)
    }

    /// Adjoint with respect to the real inner product `Re⟨x, y⟩`: `(A†, Bᵀ)`.
    pub fn adjoint(&self) -> Self {
        Self {
            linear: self.linear.adjoint(),
            antilinear: self.antilinear.transpose(),
        }
    }

    /// Left multiplication by a complex scalar: `s (A x + B conj(x))`.
    pub fn scale(&self, s: C64) -> Self {
        Self {
            linear: self.linear.scale(s),
            antilinear: self.antilinear.scale(s),
        }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        Self::new(
            self.linear.try_add(&rhs.linear)?,
            self.antilinear.try_add(&rhs.antilinear)?,
        )
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        Self::new(
            self.linear.try_sub(&rhs.linear)?,
            self.antilinear.try_sub(&rhs.antilinear)?,
        )
    }

    /// `sqrt(‖ΔA‖_F² + ‖ΔB‖_F²)`.
    pub fn distance(&self, rhs: &Self) -> Result<f64> {
        let da = self.linear.distance(&rhs.linear)?;
        let db = self.antilinear.distance(&rhs.antilinear)?;
        Ok(math::sqrt(da * da + db * db))
    }

    pub fn frobenius_norm(&self) -> f64 {
        let a = self.linear.frobenius_norm();
        let b = self.antilinear.frobenius_norm();
        math::sqrt(a * a + b * b)
    }

    /// `O₁∘O₂ + O₂∘O₁` with both orders taken as operator products.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self> {
        self.after(rhs)?.try_add(&rhs.after(self)?)
    }

    /// True iff both `O∘O†` and `O†∘O` are within `tol` (Frobenius) of the identity.
    pub fn is_unitary(&self, tol: f64) -> Result<bool> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidTolerance(tol));
        }
        Ok(self.unitarity_defect()? <= tol)
    }

    /// `max(‖O∘O† − Id‖, ‖O†∘O − Id‖)`.
    pub fn unitarity_defect(&self) -> Result<f64> {
        let id = Self::identity(self.dim());
        let adj = self.adjoint();
        let left = self.after(&adj)?.distance(&id)?;
        let right = adj.after(self)?.distance(&id)?;
        Ok(left.max(right))
    }
}

/// Euclidean norm of a complex vector.
pub fn norm(x: &[C64]) -> f64 {
    math::sqrt(x.iter().map(|z| z.norm_sqr()).sum())
}

/// `x† y`.
pub fn inner(x: &[C64], y: &[C64]) -> C64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// `‖x − y‖₂` for spinors.
pub fn spinor_distance(x: &Spinor, y: &Spinor) -> f64 {
    norm(&[x[0] - y[0], x[1] - y[1], x[2] - y[2], x[3] - y[3]])
}

pub fn spinor_add(x: &Spinor, y: &Spinor) -> Spinor {
    [x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]]
}

pub fn spinor_scale(s: C64, x: &Spinor) -> Spinor {
    x.map(|z| s * z)
}
