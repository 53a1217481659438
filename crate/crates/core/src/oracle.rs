//! Brute-force grid evaluators for dimension 2 and pairs of operators.
//!
//! Unit vectors of `C²` are parametrized up to global phase as
//! `x = (cos a, e^{ib} sin a)`, `a ∈ [0, π/2]`, `b ∈ [0, 2π)`. A resolution of
//! `R` means `R + 1` values of `a` (endpoints included) and `R` values of `b`,
//! so doubling `R` refines the previous grid.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{op_norm, ComplexMatrix, UnitVector};
use crate::scalar::{numeric_inverse, ScalarRadiusFunction};

pub const DEFAULT_RESOLUTION: usize = 2000;

type M2 = [[Complex64; 2]; 2];

fn as_2x2(t: &ComplexMatrix) -> Result<M2> {
    if t.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: t.dim(),
        });
    }
    Ok([[t.get(0, 0), t.get(0, 1)], [t.get(1, 0), t.get(1, 1)]])
}

/// `⟨Tx, x⟩` at `x = (c, e^{ib} s)`.
#[inline]
fn form_2x2(t: &M2, c: f64, s: f64, phase: Complex64) -> Complex64 {
    t[0][0] * (c * c) + t[0][1] * phase * (c * s) + t[1][0] * phase.conj() * (c * s) + t[1][1] * (s * s)
}

/// Largest singular value of a 2×2 matrix in closed form.
fn norm_2x2(m: &M2) -> f64 {
    let p = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let r = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let q = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let half = 0.5 * (p - r);
    (0.5 * (p + r) + (half * half + q.norm_sqr()).sqrt()).max(0.0).sqrt()
}

struct Grid {
    a: Vec<(f64, f64)>,
    b: Vec<Complex64>,
}

fn sphere_grid(resolution: usize) -> Grid {
    let da = FRAC_PI_2 / resolution as f64;
    let db = 2.0 * PI / resolution as f64;
    Grid {
        a: (0..=resolution)
            .map(|k| (k as f64 * da).sin_cos())
            .map(|(s, c)| (c, s))
            .collect(),
        b: (0..resolution)
            .map(|j| Complex64::from_polar(1.0, j as f64 * db))
            .collect(),
    }
}

/// `(value, row, column)` of the grid maximum of `objective(c, s, phase)`.
fn grid_max(resolution: usize, objective: impl Fn(f64, f64, Complex64) -> f64 + Sync) -> (f64, usize, usize) {
    let grid = sphere_grid(resolution);
    grid.a
        .par_iter()
        .enumerate()
        .map(|(i, &(c, s))| {
            let mut best = (f64::NEG_INFINITY, i, 0);
            for (j, &phase) in grid.b.iter().enumerate() {
                let v = objective(c, s, phase);
                if v > best.0 {
                    best = (v, i, j);
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold((f64::NEG_INFINITY, 0, 0), |acc, v| if v.0 > acc.0 { v } else { acc })
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution == 0 {
        return Err(Error::InvalidBudget("grid resolution must be positive".into()));
    }
    Ok(())
}

/// `max |⟨Tx,x⟩|` over the sphere grid, `T` of dimension 2.
pub fn grid_numerical_range_sup(t: &ComplexMatrix, resolution: usize) -> Result<f64> {
    check_resolution(resolution)?;
    let m = as_2x2(t)?;
    Ok(grid_max(resolution, |c, s, p| form_2x2(&m, c, s, p).norm()).0)
}

/// `max ‖cos t·T₁ + e^{iφ} sin t·T₂‖` over `t ∈ [0, π/2]`, `φ ∈ [0, 2π)`.
pub fn grid_euclidean_norm_pair(t1: &ComplexMatrix, t2: &ComplexMatrix, resolution: usize) -> Result<f64> {
    check_resolution(resolution)?;
    if t1.dim() != t2.dim() {
        return Err(Error::DimensionMismatch {
            expected: t1.dim(),
            found: t2.dim(),
        });
    }
    if t1.dim() == 2 {
        let (m1, m2) = (as_2x2(t1)?, as_2x2(t2)?);
        let best = grid_max(resolution, |c, s, p| {
            let mut m = [[Complex64::new(0.0, 0.0); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = m1[i][j] * c + m2[i][j] * p * s;
                }
            }
            norm_2x2(&m)
        });
        return Ok(best.0);
    }
    let best = grid_max(resolution, |c, s, p| {
        op_norm(&(&t1.scale(c) + &t2.scale_complex(p * s))).unwrap_or(f64::NEG_INFINITY)
    });
    Ok(best.0)
}

/// Grid maximum of `Σ f(|⟨Tᵢx,x⟩|)` over `C²` together with its argument and
/// the Lipschitz slack bounding how far the true supremum can lie above it.
#[derive(Debug, Clone)]
pub struct GridSearch {
    pub objective: f64,
    pub argmax: UnitVector,
    pub lipschitz_slack: f64,
}

/// Dense grid search for the ω_f objective of any number of 2×2 operators.
pub fn grid_omega_f_search(ts: &[ComplexMatrix], f: &ScalarRadiusFunction, resolution: usize) -> Result<GridSearch> {
    check_resolution(resolution)?;
    if ts.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let ms: Vec<M2> = ts.iter().map(as_2x2).collect::<Result<_>>()?;
    let (objective, i, j) = grid_max(resolution, |c, s, p| {
        ms.iter().map(|m| f.evaluate(form_2x2(m, c, s, p).norm())).sum()
    });
    let grid = sphere_grid(resolution);
    let (c, s) = grid.a[i];
    let argmax = UnitVector::normalize(vec![Complex64::new(c, 0.0), grid.b[j] * s]).expect("unit vector");
    // ‖x(a,b) − x(a',b')‖ ≤ |a−a'| + |b−b'| and |⟨Tx,x⟩ − ⟨Ty,y⟩| ≤ 2‖T‖‖x−y‖
    let rho = 0.5 * (FRAC_PI_2 / resolution as f64) + 0.5 * (2.0 * PI / resolution as f64);
    let lipschitz_slack = ms
        .iter()
        .map(|m| {
            let n = norm_2x2(m);
            f.derivative(n) * 2.0 * n * rho
        })
        .sum();
    Ok(GridSearch {
        objective,
        argmax,
        lipschitz_slack,
    })
}

/// `f⁻¹(max Σ f(|⟨Tᵢx,x⟩|))` over the sphere grid for a pair of 2×2 operators.
pub fn grid_omega_f_pair(
    t1: &ComplexMatrix,
    t2: &ComplexMatrix,
    f: &ScalarRadiusFunction,
    resolution: usize,
) -> Result<f64> {
    let search = grid_omega_f_search(&[t1.clone(), t2.clone()], f, resolution)?;
    numeric_inverse(f, search.objective.max(0.0))
}

/// `max |λ₁ + λ₂|` over `|λ₁|² + |λ₂|² = 1`, on the `(t, φ)` grid.
pub fn grid_lambda_sphere_max(resolution: usize) -> Result<f64> {
    check_resolution(resolution)?;
    Ok(grid_max(resolution, |c, s, p| (p * s + c).norm()).0)
}
