//! Dense complex matrix algebra.
//!
//! [`ComplexMatrix`] is a square matrix with finite entries. Everything the
//! radii and the inequality checks need is here: adjoints, the operator norm,
//! Hermitian eigendecomposition, the matrix absolute value, PSD powers and
//! spectral functional calculus, Cartesian parts and off-diagonal blocks.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::ScalarRadiusFunction;

pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// Eigenvalues above this negative threshold (relative) count as zero.
const PSD_SLACK: f64 = 1e-10;
const EIGEN_MAX_SWEEPS: usize = 10_000;

/// A dense square complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix{:?}", self.to_rows())
    }
}

impl ComplexMatrix {
    /// Builds a matrix from `dim * dim` row-major entries.
    pub fn from_row_major(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::MalformedData {
                index: 0,
                reason: "dimension must be positive".into(),
            });
        }
        if entries.len() != dim * dim {
            return Err(Error::MalformedData {
                index: entries.len().min(dim * dim),
                reason: format!("expected {} entries, found {}", dim * dim, entries.len()),
            });
        }
        if let Some(index) = entries.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            inner: DMatrix::from_row_slice(dim, dim, &entries),
        })
    }

    /// Builds a matrix from nested rows; panics on ragged or non-square input.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        let entries = rows.iter().flatten().copied().collect();
        Self::from_row_major(dim, entries).expect("finite square matrix")
    }

    /// Real-entry convenience constructor, mostly for fixed examples.
    pub fn from_real_rows<const N: usize>(rows: [[f64; N]; N]) -> Self {
        let entries = rows.iter().flatten().map(|&x| Complex64::new(x, 0.0)).collect();
        Self::from_row_major(N, entries).expect("finite square matrix")
    }

    pub(crate) fn from_inner(inner: DMatrix<Complex64>) -> Self {
        debug_assert!(inner.is_square());
        Self { inner }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_inner(DMatrix::zeros(dim, dim))
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_inner(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let d = DVector::from_iterator(diag.len(), diag.iter().map(|&x| Complex64::new(x, 0.0)));
        Self::from_inner(DMatrix::from_diagonal(&d))
    }

    /// Matrix with independent standard complex normal entries.
    pub fn ginibre<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_inner(DMatrix::from_fn(dim, dim, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * scale, im * scale)
        }))
    }

    /// Haar-ish random unitary via QR of a Ginibre matrix.
    pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = Self::ginibre(dim, rng).inner;
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        // fix column phases so the distribution does not depend on the QR sign convention
        let mut q = q;
        for j in 0..dim {
            let d = r[(j, j)];
            let n = d.norm();
            if n > 0.0 {
                let phase = d / n;
                for i in 0..dim {
                    q[(i, j)] *= phase;
                }
            }
        }
        Self::from_inner(q)
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.inner[(row, col)]
    }

    pub fn as_inner(&self) -> &DMatrix<Complex64> {
        &self.inner
    }

    pub fn to_rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }

    pub fn row_major(&self) -> Vec<Complex64> {
        self.to_rows().into_iter().flatten().collect()
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_inner(self.inner.adjoint())
    }

    pub fn scale(&self, c: f64) -> Self {
        Self::from_inner(&self.inner * Complex64::new(c, 0.0))
    }

    pub fn scale_complex(&self, c: Complex64) -> Self {
        Self::from_inner(&self.inner * c)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        self.inner.trace()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// Frobenius distance between `self` and its adjoint.
    pub fn hermitian_deviation(&self) -> f64 {
        (&self.inner - self.inner.adjoint())
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol * (1.0 + self.frobenius_norm())
    }

    /// `(T + T*) / 2`.
    pub fn real_part(&self) -> Self {
        Self::from_inner((&self.inner + self.inner.adjoint()) * Complex64::new(0.5, 0.0))
    }

    /// `(T - T*) / 2i`.
    pub fn imag_part(&self) -> Self {
        Self::from_inner((&self.inner - self.inner.adjoint()) * Complex64::new(0.0, -0.5))
    }

    pub fn mat_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| (0..n).map(|j| self.inner[(i, j)] * x[j]).sum())
            .collect()
    }

    /// `⟨T x, y⟩ = y* T x`.
    pub fn inner_form(&self, x: &[Complex64], y: &[Complex64]) -> Complex64 {
        let n = self.dim();
        debug_assert!(x.len() == n && y.len() == n);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = Complex64::new(0.0, 0.0);
            for j in 0..n {
                row += self.inner[(i, j)] * x[j];
            }
            acc += y[i].conj() * row;
        }
        acc
    }

    /// `⟨T x, x⟩`.
    pub fn quadratic_form(&self, x: &[Complex64]) -> Complex64 {
        self.inner_form(x, x)
    }

    /// Hermitian eigendecomposition with ascending eigenvalues.
    pub fn hermitian_eigen(&self) -> Result<HermitianEigen> {
        hermitian_eigen(self)
    }

    pub fn op_norm(&self) -> Result<f64> {
        op_norm(self)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim());
        ComplexMatrix::from_inner(&self.inner + &rhs.inner)
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim());
        ComplexMatrix::from_inner(&self.inner - &rhs.inner)
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim(), rhs.dim());
        ComplexMatrix::from_inner(&self.inner * &rhs.inner)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix::from_inner(-&self.inner)
    }
}

/// A unit vector in `C^dim`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnitVector(Vec<Complex64>);

impl UnitVector {
    /// Normalizes `v`; `None` for the zero vector.
    pub fn normalize(mut v: Vec<Complex64>) -> Option<Self> {
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return None;
        }
        v.iter_mut().for_each(|z| *z /= n);
        Some(Self(v))
    }

    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        loop {
            let v = (0..dim)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            if let Some(u) = Self::normalize(v) {
                return u;
            }
        }
    }

    /// First standard basis vector.
    pub fn basis(dim: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[0] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Complex64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// Eigenvalues in ascending order with orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.inner.column(k).iter().copied().collect()
    }

    /// `U diag(g(λ)) U*`.
    pub fn reconstruct_with(&self, g: impl Fn(f64) -> f64) -> ComplexMatrix {
        let values: Vec<f64> = self.eigenvalues.iter().map(|&l| g(l)).collect();
        self.reconstruct_from(&values)
    }

    /// `U diag(values) U*`.
    pub fn reconstruct_from(&self, values: &[f64]) -> ComplexMatrix {
        let u = &self.eigenvectors.inner;
        let n = u.nrows();
        let mut scaled = u.clone();
        for (j, &v) in values.iter().enumerate() {
            let w = Complex64::new(v, 0.0);
            for i in 0..n {
                scaled[(i, j)] *= w;
            }
        }
        ComplexMatrix::from_inner(scaled * u.adjoint())
    }
}

fn symmetrized(a: &ComplexMatrix) -> DMatrix<Complex64> {
    (&a.inner + a.inner.adjoint()) * Complex64::new(0.5, 0.0)
}

fn check_hermitian(a: &ComplexMatrix) -> Result<()> {
    let deviation = a.hermitian_deviation();
    if deviation > PSD_SLACK * (1.0 + a.frobenius_norm()) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized first; inputs further than `1e-10` (relative,
/// Frobenius) from Hermitian are rejected. The decomposition is verified by
/// reconstruction and the residual is reported on failure.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(a)?;
    let h = symmetrized(a);
    let scale = 1.0 + a.frobenius_norm();
    let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, EIGEN_MAX_SWEEPS)
        .ok_or(Error::EigenFailure { residual: f64::NAN })?;

    let n = h.nrows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    let result = HermitianEigen {
        eigenvalues,
        eigenvectors: ComplexMatrix::from_inner(vectors),
    };

    let residual = (&result.reconstruct_with(|l| l).inner - &h)
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if !(residual <= 1e-10 * scale) {
        return Err(Error::EigenFailure { residual });
    }
    Ok(result)
}

/// Largest eigenvalue of a Hermitian matrix, without eigenvectors.
pub fn max_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    check_hermitian(a)?;
    let vals = symmetrized(a).symmetric_eigenvalues();
    let top = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !top.is_finite() {
        return Err(Error::EigenFailure { residual: f64::NAN });
    }
    Ok(top)
}

/// Largest eigenvalue of an exactly Hermitian matrix; skips validation.
pub(crate) fn max_eigenvalue_trusted(h: DMatrix<Complex64>) -> f64 {
    h.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(a: &ComplexMatrix) -> Result<f64> {
    check_hermitian(a)?;
    let vals = symmetrized(a).symmetric_eigenvalues();
    let low = vals.iter().copied().fold(f64::INFINITY, f64::min);
    if !low.is_finite() {
        return Err(Error::EigenFailure { residual: f64::NAN });
    }
    Ok(low)
}

pub fn adjoint(t: &ComplexMatrix) -> ComplexMatrix {
    t.adjoint()
}

/// Largest singular value, `sqrt(λ_max(T*T))`.
pub fn op_norm(t: &ComplexMatrix) -> Result<f64> {
    if t.is_zero() {
        return Ok(0.0);
    }
    let gram = ComplexMatrix::from_inner(t.inner.adjoint() * &t.inner);
    Ok(max_eigenvalue(&gram)?.max(0.0).sqrt())
}

/// Top singular triple `(σ, x, y)` with `T x = σ y`.
pub(crate) fn top_singular_pair(t: &ComplexMatrix) -> Result<(f64, Vec<Complex64>, Vec<Complex64>)> {
    let n = t.dim();
    let gram = ComplexMatrix::from_inner(t.inner.adjoint() * &t.inner);
    let eig = hermitian_eigen(&gram)?;
    let x = eig.eigenvector(n - 1);
    let tx = t.mat_vec(&x);
    let sigma = tx.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let y = match UnitVector::normalize(tx) {
        Some(y) => y.into_inner(),
        None => UnitVector::basis(n).into_inner(),
    };
    Ok((sigma, x, y))
}

/// Spectral power `A^s` of a Hermitian PSD matrix.
///
/// Eigenvalues are clamped at zero. For `s = 0` the convention `0^0 = 0`
/// applies, so the result is the projection onto the support of `A`.
pub fn psd_power(a: &ComplexMatrix, s: f64) -> Result<ComplexMatrix> {
    if !(s >= 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s".into(),
            value: s,
            range: "[0, inf)".into(),
        });
    }
    let eig = hermitian_eigen(a)?;
    check_psd(&eig, a)?;
    if s == 1.0 {
        return Ok(ComplexMatrix::from_inner(symmetrized(a)));
    }
    Ok(eig.reconstruct_with(|l| {
        let l = l.max(0.0);
        if l == 0.0 {
            0.0
        } else {
            l.powf(s)
        }
    }))
}

fn check_psd(eig: &HermitianEigen, a: &ComplexMatrix) -> Result<()> {
    let low = eig.eigenvalues[0];
    if low < -PSD_SLACK * (1.0 + a.frobenius_norm()) {
        return Err(Error::InvalidParameter {
            name: "min eigenvalue".into(),
            value: low,
            range: "PSD input required".into(),
        });
    }
    Ok(())
}

/// `|T| = (T*T)^{1/2}`.
pub fn abs(t: &ComplexMatrix) -> Result<ComplexMatrix> {
    let gram = ComplexMatrix::from_inner(t.inner.adjoint() * &t.inner);
    psd_power(&gram, 0.5)
}

/// `U diag(f(λ)) U*` for Hermitian PSD `A` (eigenvalues clamped at zero).
pub fn apply_scalar_function_psd(f: &ScalarRadiusFunction, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(a)?;
    check_psd(&eig, a)?;
    let mut values = Vec::with_capacity(eig.eigenvalues.len());
    for &lam in &eig.eigenvalues {
        let l = lam.max(0.0);
        let v = f.evaluate(l);
        if !v.is_finite() {
            return Err(Error::FunctionEvaluation {
                eigenvalue: l,
                value: v,
            });
        }
        values.push(v);
    }
    Ok(eig.reconstruct_from(&values))
}

/// `[[O, T1], [T2*, O]]`; the adjoint of `t2` is taken here.
pub fn offdiag_block(t1: &ComplexMatrix, t2: &ComplexMatrix) -> Result<ComplexMatrix> {
    let d = t1.dim();
    if t2.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: t2.dim(),
        });
    }
    let mut m = DMatrix::zeros(2 * d, 2 * d);
    m.view_mut((0, d), (d, d)).copy_from(&t1.inner);
    m.view_mut((d, 0), (d, d)).copy_from(&t2.inner.adjoint());
    Ok(ComplexMatrix::from_inner(m))
}

/// `Σ Tᵢ Tᵢ*`.
pub fn sum_outer_grams(ts: &[ComplexMatrix]) -> ComplexMatrix {
    let d = ts[0].dim();
    let mut acc = DMatrix::zeros(d, d);
    for t in ts {
        acc += &t.inner * t.inner.adjoint();
    }
    ComplexMatrix::from_inner(acc)
}

/// `Σ cᵢ Tᵢ` for equally sized matrices.
pub fn linear_combination(coeffs: &[Complex64], ts: &[ComplexMatrix]) -> ComplexMatrix {
    let d = ts[0].dim();
    let mut acc = DMatrix::zeros(d, d);
    for (c, t) in coeffs.iter().zip(ts) {
        acc += &t.inner * *c;
    }
    ComplexMatrix::from_inner(acc)
}
