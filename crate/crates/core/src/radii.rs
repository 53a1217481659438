//! Certified suprema: numerical radius, Euclidean operator norm, f-operator radius.
//!
//! Every routine returns a [`CertifiedValue`]: the best value found, the
//! argument that attains it (re-evaluating the objective there reproduces the
//! value), and a rigorous upper bound when one is available.
//!
//! * `ω(T)` reduces to a one-dimensional problem,
//!   `ω(T) = max_θ λ_max(Re(e^{iθ} T))`, whose objective is `‖T‖`-Lipschitz in
//!   `θ`. A uniform θ-grid therefore certifies an upper bound, and golden-section
//!   refinement of the best cell sharpens the lower one.
//! * `‖(T₁,…,Tₙ)‖ₑ` is maximized by alternating between the coefficient tuple
//!   and the top singular pair of `Σ λᵢTᵢ`; each half-step cannot decrease the
//!   objective.
//! * `ω_f` is maximized over the sphere by linearized ascent followed by
//!   compass search, from seeded restarts.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    hermitian_eigen, linear_combination, max_eigenvalue_trusted, op_norm, sum_outer_grams, top_singular_pair,
    ComplexMatrix, UnitVector,
};
use crate::oracle;
use crate::scalar::{numeric_inverse, power_function, ScalarRadiusFunction};

/// Odd multiplier used to derive per-restart seeds.
pub const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;
const GOLDEN_WIDTH: f64 = 1e-12;
const COMPASS_START: f64 = 0.1;
const COMPASS_END: f64 = 1e-9;
const DIM2_SUPPLEMENT_RESOLUTION: usize = 256;

/// Seed of restart (or trial) `index` derived from a base seed.
pub fn mix_seed(seed: u64, index: u64) -> u64 {
    seed ^ index.wrapping_mul(SEED_MIX)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerBudget {
    pub grid_points: usize,
    pub restarts: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerBudget {
    fn default() -> Self {
        Self {
            grid_points: 1024,
            restarts: 16,
            max_iterations: 10_000,
            tolerance: 1e-10,
            seed: 0xC0FFEE,
        }
    }
}

impl OptimizerBudget {
    pub fn validate(&self) -> Result<()> {
        if self.grid_points == 0 || self.restarts == 0 || self.max_iterations == 0 {
            return Err(Error::InvalidBudget(
                "grid_points, restarts and max_iterations must be positive".into(),
            ));
        }
        if !(self.tolerance > 0.0 && self.tolerance <= 1e-2) {
            return Err(Error::InvalidBudget(format!(
                "tolerance {} outside (0, 1e-2]",
                self.tolerance
            )));
        }
        Ok(())
    }

    /// Same seed, every size multiplied by `factor`.
    pub fn scaled(&self, factor: usize) -> Self {
        Self {
            grid_points: self.grid_points * factor,
            restarts: self.restarts * factor,
            max_iterations: self.max_iterations * factor,
            ..*self
        }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// The argument at which a supremum was attained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// A unit vector `x`.
    Vector(UnitVector),
    /// A phase angle `θ`.
    Phase(f64),
    /// A unit coefficient tuple `(λ₁,…,λₙ)`.
    Coefficients(Vec<Complex64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifiedValue {
    pub value: f64,
    pub lower_witness: Witness,
    pub upper_certificate: Option<f64>,
    pub restarts_used: usize,
    pub iterations_used: usize,
    pub converged: bool,
}

impl CertifiedValue {
    fn exact_zero(witness: Witness) -> Self {
        Self {
            value: 0.0,
            lower_witness: witness,
            upper_certificate: Some(0.0),
            restarts_used: 0,
            iterations_used: 0,
            converged: true,
        }
    }

    /// Width of the certified bracket, if certified.
    pub fn gap(&self) -> Option<f64> {
        self.upper_certificate.map(|u| u - self.value)
    }
}

fn check_tuple(ts: &[ComplexMatrix]) -> Result<usize> {
    let first = ts.first().ok_or(Error::EmptyTuple)?;
    let d = first.dim();
    for t in ts {
        if t.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: t.dim(),
            });
        }
    }
    Ok(d)
}

/// Maximizes a unimodal-near-the-peak function on `[lo, hi]`.
/// Returns `(argmax, max, iterations)`.
pub(crate) fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64, usize) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while hi - lo > width && iterations < 200 {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
        iterations += 1;
    }
    if fc >= fd {
        (c, fc, iterations)
    } else {
        (d, fd, iterations)
    }
}

/// Grid search over `θ ∈ [0, 2π)` followed by golden refinement of the best cell.
/// Returns `(θ*, grid_best, iterations, converged)`.
fn phase_search(objective: impl Fn(f64) -> f64 + Sync, grid_points: usize) -> (f64, f64, usize, bool) {
    let step = 2.0 * PI / grid_points as f64;
    let values: Vec<f64> = (0..grid_points)
        .into_par_iter()
        .map(|k| objective(k as f64 * step))
        .collect();
    let (k_best, grid_best) =
        values.iter().copied().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (k, v)| if v > acc.1 { (k, v) } else { acc },
        );
    let center = k_best as f64 * step;
    let (theta, refined, iters) = golden_section_max(&objective, center - step, center + step, GOLDEN_WIDTH);
    let converged = iters < 200;
    let theta = if refined >= grid_best { theta } else { center };
    (theta, grid_best, grid_points + iters, converged)
}

/// Hermitian part of `e^{iθ}T`, written as `cos θ·ReT − sin θ·ImT`.
fn rotated_hermitian(re: &DMatrix<Complex64>, im: &DMatrix<Complex64>, theta: f64) -> DMatrix<Complex64> {
    let (s, c) = theta.sin_cos();
    re * Complex64::new(c, 0.0) - im * Complex64::new(s, 0.0)
}

/// `ω(T) = sup_{‖x‖=1} |⟨Tx, x⟩|`.
///
/// The upper certificate is `grid_best + ‖T‖·π/grid_points` (capped by `‖T‖`);
/// the witness is the top eigenvector of the optimal rotated Hermitian part.
pub fn numerical_radius(t: &ComplexMatrix, budget: &OptimizerBudget) -> Result<CertifiedValue> {
    budget.validate()?;
    if t.is_zero() {
        return Ok(CertifiedValue::exact_zero(Witness::Vector(UnitVector::basis(t.dim()))));
    }
    let norm = op_norm(t)?;
    let re = t.real_part().as_inner().clone();
    let im = t.imag_part().as_inner().clone();
    let objective = |theta: f64| max_eigenvalue_trusted(rotated_hermitian(&re, &im, theta));
    let (theta, grid_best, iterations, converged) = phase_search(objective, budget.grid_points);

    let h = ComplexMatrix::from_inner(rotated_hermitian(&re, &im, theta));
    let eig = hermitian_eigen(&h)?;
    let x = UnitVector::normalize(eig.eigenvector(t.dim() - 1)).ok_or(Error::EigenFailure { residual: f64::NAN })?;
    let value = t.quadratic_form(x.as_slice()).norm();
    let upper = (grid_best + norm * PI / budget.grid_points as f64).min(norm).max(value);
    Ok(CertifiedValue {
        value,
        lower_witness: Witness::Vector(x),
        upper_certificate: Some(upper),
        restarts_used: 1,
        iterations_used: iterations,
        converged,
    })
}

/// `sup_θ ‖A + e^{iθ} B*‖`, certified with Lipschitz constant `‖B‖`.
pub fn sup_theta_norm(a: &ComplexMatrix, b: &ComplexMatrix, budget: &OptimizerBudget) -> Result<CertifiedValue> {
    budget.validate()?;
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let norm_a = op_norm(a)?;
    let norm_b = op_norm(b)?;
    let b_adj = b.adjoint();
    let at = |theta: f64| -> Result<f64> {
        let phase = Complex64::from_polar(1.0, theta);
        op_norm(&(a + &b_adj.scale_complex(phase)))
    };
    if norm_b == 0.0 {
        return Ok(CertifiedValue {
            value: norm_a,
            lower_witness: Witness::Phase(0.0),
            upper_certificate: Some(norm_a),
            restarts_used: 1,
            iterations_used: 1,
            converged: true,
        });
    }
    let (theta, grid_best, iterations, converged) =
        phase_search(|th| at(th).unwrap_or(f64::NEG_INFINITY), budget.grid_points);
    let value = at(theta)?;
    let upper = (grid_best + norm_b * PI / budget.grid_points as f64)
        .min(norm_a + norm_b)
        .max(value);
    Ok(CertifiedValue {
        value,
        lower_witness: Witness::Phase(theta),
        upper_certificate: Some(upper),
        restarts_used: 1,
        iterations_used: iterations,
        converged,
    })
}

fn random_unit_coefficients(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    UnitVector::random(n, rng).into_inner()
}

struct RestartOutcome {
    value: f64,
    coefficients: Vec<Complex64>,
    iterations: usize,
    converged: bool,
}

/// Picks the best outcome; ties go to the lower restart index.
fn best_of<T>(outcomes: Vec<T>, value: impl Fn(&T) -> f64) -> T {
    let mut iter = outcomes.into_iter();
    let mut best = iter.next().expect("at least one restart");
    for o in iter {
        if value(&o) > value(&best) {
            best = o;
        }
    }
    best
}

fn euclidean_restart(ts: &[ComplexMatrix], budget: &OptimizerBudget, restart: usize) -> Result<RestartOutcome> {
    let n = ts.len();
    let dim = ts[0].dim();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(budget.seed, restart as u64));
    // the first restarts start from the top singular pairs of the individual operators
    let (mut x, mut y) = if restart < n && !ts[restart].is_zero() {
        let (_, x, y) = top_singular_pair(&ts[restart])?;
        (x, y)
    } else {
        (
            UnitVector::random(dim, &mut rng).into_inner(),
            UnitVector::random(dim, &mut rng).into_inner(),
        )
    };
    let mut best = f64::NEG_INFINITY;
    let mut coefficients = random_unit_coefficients(n, &mut rng);
    let mut iterations = 0;
    let mut converged = false;
    while iterations < budget.max_iterations {
        iterations += 1;
        let c: Vec<Complex64> = ts.iter().map(|t| t.inner_form(&x, &y).conj()).collect();
        if let Some(lambda) = UnitVector::normalize(c) {
            coefficients = lambda.into_inner();
        }
        let combo = linear_combination(&coefficients, ts);
        let (sigma, nx, ny) = top_singular_pair(&combo)?;
        let gain = sigma - best;
        x = nx;
        y = ny;
        if sigma > best {
            best = sigma;
        }
        if gain < budget.tolerance * (1.0 + sigma) {
            converged = true;
            break;
        }
    }
    let value = op_norm(&linear_combination(&coefficients, ts))?;
    Ok(RestartOutcome {
        value,
        coefficients,
        iterations,
        converged,
    })
}

/// `‖(T₁,…,Tₙ)‖ₑ = sup_{Σ|λᵢ|²=1} ‖Σ λᵢ Tᵢ‖`.
///
/// The value is a guaranteed lower bound; the certificate is
/// `min(‖Σ TᵢTᵢ*‖^{1/2}, ‖Σ Tᵢ*Tᵢ‖^{1/2})`.
pub fn euclidean_norm(ts: &[ComplexMatrix], budget: &OptimizerBudget) -> Result<CertifiedValue> {
    budget.validate()?;
    check_tuple(ts)?;
    let n = ts.len();
    if ts.iter().all(ComplexMatrix::is_zero) {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[0] = Complex64::new(1.0, 0.0);
        return Ok(CertifiedValue::exact_zero(Witness::Coefficients(e)));
    }
    let adjoints: Vec<ComplexMatrix> = ts.iter().map(ComplexMatrix::adjoint).collect();
    let upper = op_norm(&sum_outer_grams(ts))?
        .sqrt()
        .min(op_norm(&sum_outer_grams(&adjoints))?.sqrt());

    let outcomes: Vec<RestartOutcome> = (0..budget.restarts)
        .into_par_iter()
        .map(|r| euclidean_restart(ts, budget, r))
        .collect::<Result<_>>()?;
    let iterations = outcomes.iter().map(|o| o.iterations).sum();
    let converged = outcomes.iter().all(|o| o.converged);
    let best = best_of(outcomes, |o| o.value);
    Ok(CertifiedValue {
        value: best.value,
        lower_witness: Witness::Coefficients(best.coefficients),
        upper_certificate: Some(upper.max(best.value)),
        restarts_used: budget.restarts,
        iterations_used: iterations,
        converged,
    })
}

/// `Σ f(|⟨Tᵢx, x⟩|)`.
pub(crate) fn omega_f_objective(ts: &[ComplexMatrix], f: &ScalarRadiusFunction, x: &[Complex64]) -> f64 {
    ts.iter().map(|t| f.evaluate(t.quadratic_form(x).norm())).sum()
}

/// Successive linearization: `x ← top eigenvector of Σ Re(w̄ᵢ Tᵢ)` with
/// `wᵢ = f'(|zᵢ|) zᵢ/|zᵢ|`. Stops at the first non-improving step.
fn linearized_ascent(
    ts: &[ComplexMatrix],
    f: &ScalarRadiusFunction,
    mut x: Vec<Complex64>,
    budget: &OptimizerBudget,
) -> Result<(Vec<Complex64>, f64, usize)> {
    let mut value = omega_f_objective(ts, f, &x);
    let mut iterations = 0;
    let cap = budget.max_iterations.min(200);
    while iterations < cap {
        iterations += 1;
        let weights: Vec<Complex64> = ts
            .iter()
            .map(|t| {
                let z = t.quadratic_form(&x);
                let r = z.norm();
                if r == 0.0 {
                    Complex64::new(0.0, 0.0)
                } else {
                    z * (f.derivative(r) / r)
                }
            })
            .collect();
        let conj: Vec<Complex64> = weights.iter().map(|w| w.conj()).collect();
        let m = linear_combination(&conj, ts).real_part();
        if m.is_zero() {
            break;
        }
        let eig = hermitian_eigen(&m)?;
        let candidate = eig.eigenvector(x.len() - 1);
        let cand_value = omega_f_objective(ts, f, &candidate);
        if cand_value > value + budget.tolerance * (1.0 + value) {
            x = candidate;
            value = cand_value;
        } else {
            if cand_value > value {
                x = candidate;
                value = cand_value;
            }
            break;
        }
    }
    Ok((x, value, iterations))
}

/// Compass search on the `2·dim` real coordinates of `x`, renormalizing every
/// trial point; the step halves whenever no coordinate move improves.
fn compass_search(
    ts: &[ComplexMatrix],
    f: &ScalarRadiusFunction,
    mut x: Vec<Complex64>,
    budget: &OptimizerBudget,
) -> (Vec<Complex64>, f64, usize, bool) {
    let dim = x.len();
    let mut value = omega_f_objective(ts, f, &x);
    let mut step = COMPASS_START;
    let mut iterations = 0;
    while step >= COMPASS_END {
        if iterations >= budget.max_iterations {
            return (x, value, iterations, false);
        }
        iterations += 1;
        let mut improved = false;
        for k in 0..2 * dim {
            for sign in [1.0, -1.0] {
                let mut trial = x.clone();
                let delta = sign * step;
                if k < dim {
                    trial[k].re += delta;
                } else {
                    trial[k - dim].im += delta;
                }
                let Some(trial) = UnitVector::normalize(trial) else {
                    continue;
                };
                let v = omega_f_objective(ts, f, trial.as_slice());
                if v > value {
                    value = v;
                    x = trial.into_inner();
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, value, iterations, true)
}

struct SphereOutcome {
    value: f64,
    x: Vec<Complex64>,
    iterations: usize,
    converged: bool,
}

fn sphere_restart(
    ts: &[ComplexMatrix],
    f: &ScalarRadiusFunction,
    budget: &OptimizerBudget,
    restart: usize,
) -> Result<SphereOutcome> {
    let dim = ts[0].dim();
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(budget.seed, restart as u64));
    let start = if restart.is_multiple_of(2) {
        UnitVector::random(dim, &mut rng).into_inner()
    } else {
        // expose a random direction of the joint numerical range
        let c: Vec<Complex64> = ts
            .iter()
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let m = linear_combination(&c, ts).real_part();
        if m.is_zero() {
            UnitVector::random(dim, &mut rng).into_inner()
        } else {
            hermitian_eigen(&m)?.eigenvector(dim - 1)
        }
    };
    polish(ts, f, start, budget)
}

fn polish(
    ts: &[ComplexMatrix],
    f: &ScalarRadiusFunction,
    start: Vec<Complex64>,
    budget: &OptimizerBudget,
) -> Result<SphereOutcome> {
    let (x, _, lin_iters) = linearized_ascent(ts, f, start, budget)?;
    let (x, value, cs_iters, converged) = compass_search(ts, f, x, budget);
    Ok(SphereOutcome {
        value,
        x,
        iterations: lin_iters + cs_iters,
        converged,
    })
}

/// `ω_f(T₁,…,Tₙ) = sup_{‖x‖=1} f⁻¹(Σ f(|⟨Tᵢx, x⟩|))`.
///
/// In dimension 2 the restarts are supplemented by a dense grid over the
/// sphere, which also yields an upper certificate. No certificate is given
/// in higher dimensions.
pub fn omega_f(ts: &[ComplexMatrix], f: &ScalarRadiusFunction, budget: &OptimizerBudget) -> Result<CertifiedValue> {
    budget.validate()?;
    let dim = check_tuple(ts)?;
    if ts.iter().all(ComplexMatrix::is_zero) {
        return Ok(CertifiedValue::exact_zero(Witness::Vector(UnitVector::basis(dim))));
    }
    if dim == 1 {
        let x = UnitVector::basis(1);
        let g = omega_f_objective(ts, f, x.as_slice());
        let value = numeric_inverse(f, g)?;
        return Ok(CertifiedValue {
            value,
            lower_witness: Witness::Vector(x),
            upper_certificate: Some(value),
            restarts_used: 1,
            iterations_used: 1,
            converged: true,
        });
    }

    let mut outcomes: Vec<SphereOutcome> = (0..budget.restarts)
        .into_par_iter()
        .map(|r| sphere_restart(ts, f, budget, r))
        .collect::<Result<_>>()?;

    let mut upper = None;
    if dim == 2 {
        let grid = oracle::grid_omega_f_search(ts, f, DIM2_SUPPLEMENT_RESOLUTION)?;
        let bound_g = grid.objective + grid.lipschitz_slack;
        upper = Some(numeric_inverse(f, bound_g)?);
        outcomes.push(polish(ts, f, grid.argmax.into_inner(), budget)?);
    }

    let iterations = outcomes.iter().map(|o| o.iterations).sum();
    let converged = outcomes.iter().all(|o| o.converged);
    let restarts_used = outcomes.len();
    let best = best_of(outcomes, |o| o.value);
    let x = UnitVector::normalize(best.x).expect("unit witness");
    let value = numeric_inverse(f, omega_f_objective(ts, f, x.as_slice()))?;
    Ok(CertifiedValue {
        value,
        lower_witness: Witness::Vector(x),
        upper_certificate: upper.map(|u: f64| u.max(value)),
        restarts_used,
        iterations_used: iterations,
        converged,
    })
}

/// `ω_q(T₁,…,Tₙ) = sup (Σ |⟨Tᵢx,x⟩|^q)^{1/q}`, `q ≥ 1`.
pub fn omega_q(ts: &[ComplexMatrix], q: f64, budget: &OptimizerBudget) -> Result<CertifiedValue> {
    omega_f(ts, &power_function(q)?, budget)
}

/// Euclidean operator radius, `ω_q` with `q = 2`.
pub fn omega_e(ts: &[ComplexMatrix], budget: &OptimizerBudget) -> Result<CertifiedValue> {
    omega_q(ts, 2.0, budget)
}

/// Re-evaluates the ω objective `|⟨Tx,x⟩|` at a vector witness.
pub fn numerical_radius_at(t: &ComplexMatrix, w: &Witness) -> Option<f64> {
    match w {
        Witness::Vector(x) => Some(t.quadratic_form(x.as_slice()).norm()),
        _ => None,
    }
}

/// Re-evaluates `‖Σ λᵢTᵢ‖` at a coefficient witness.
pub fn euclidean_norm_at(ts: &[ComplexMatrix], w: &Witness) -> Option<f64> {
    match w {
        Witness::Coefficients(c) => op_norm(&linear_combination(c, ts)).ok(),
        _ => None,
    }
}

/// Re-evaluates `f⁻¹(Σ f(|⟨Tᵢx,x⟩|))` at a vector witness.
pub fn omega_f_at(ts: &[ComplexMatrix], f: &ScalarRadiusFunction, w: &Witness) -> Option<f64> {
    match w {
        Witness::Vector(x) => numeric_inverse(f, omega_f_objective(ts, f, x.as_slice())).ok(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{offdiag_block, I};

    fn budget() -> OptimizerBudget {
        OptimizerBudget::default()
    }

    #[test]
    fn omega_examples() {
        let h = ComplexMatrix::from_diagonal(&[-3.0, 2.0]);
        let w = numerical_radius(&h, &budget()).unwrap();
        assert!((w.value - 3.0).abs() < 1e-12);
        let n = ComplexMatrix::from_real_rows([[0.0, 1.0], [0.0, 0.0]]);
        let w = numerical_radius(&n, &budget()).unwrap();
        assert!((w.value - 0.5).abs() < 1e-12);
        let t1 = ComplexMatrix::from_real_rows([[2., 4.], [3., 4.]]);
        let t2 = ComplexMatrix::from_real_rows([[5., 3.], [3., 4.]]);
        let w = numerical_radius(&offdiag_block(&t1, &t2).unwrap(), &budget()).unwrap();
        assert!((w.value - 7.01793).abs() < 5e-6, "{}", w.value);
    }

    #[test]
    fn omega_certificate_brackets_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for dim in 1..5 {
            let t = ComplexMatrix::ginibre(dim, &mut rng);
            let w = numerical_radius(&t, &budget()).unwrap();
            let upper = w.upper_certificate.unwrap();
            assert!(w.value <= upper);
            assert!(upper - w.value <= op_norm(&t).unwrap() * PI / 1024.0 + 1e-12);
            let again = numerical_radius_at(&t, &w.lower_witness).unwrap();
            assert!((again - w.value).abs() <= 1e-10 * (1.0 + w.value));
        }
    }

    #[test]
    fn zero_inputs_are_legal() {
        let z = ComplexMatrix::zeros(3);
        assert_eq!(numerical_radius(&z, &budget()).unwrap().value, 0.0);
        assert_eq!(euclidean_norm(&[z.clone(), z.clone()], &budget()).unwrap().value, 0.0);
        assert_eq!(omega_e(std::slice::from_ref(&z), &budget()).unwrap().value, 0.0);
        assert_eq!(sup_theta_norm(&z, &z, &budget()).unwrap().value, 0.0);
    }

    #[test]
    fn sup_theta_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = ComplexMatrix::ginibre(3, &mut rng);
        let s = sup_theta_norm(&a, &ComplexMatrix::zeros(3), &budget()).unwrap();
        assert!((s.value - op_norm(&a).unwrap()).abs() < 1e-12);
        let id = ComplexMatrix::identity(2);
        let s = sup_theta_norm(&id, &id, &budget()).unwrap();
        assert!((s.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn euclidean_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let t = ComplexMatrix::ginibre(3, &mut rng);
        let norm = op_norm(&t).unwrap();
        let single = euclidean_norm(std::slice::from_ref(&t), &budget()).unwrap();
        assert!((single.value - norm).abs() < 1e-10);
        let twice = euclidean_norm(&[t.clone(), t.clone()], &budget()).unwrap();
        assert!((twice.value - 2f64.sqrt() * norm).abs() < 1e-10);
        let e1 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let e2 = ComplexMatrix::from_diagonal(&[0.0, 1.0]);
        let v = euclidean_norm(&[e1, e2], &budget()).unwrap();
        assert!((v.value - 1.0).abs() < 1e-10);
        assert!(matches!(euclidean_norm(&[], &budget()), Err(Error::EmptyTuple)));
    }

    #[test]
    fn euclidean_witness_reproduces_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let ts: Vec<_> = (0..3).map(|_| ComplexMatrix::ginibre(3, &mut rng)).collect();
        let v = euclidean_norm(&ts, &budget()).unwrap();
        let again = euclidean_norm_at(&ts, &v.lower_witness).unwrap();
        assert!((again - v.value).abs() <= 1e-10 * (1.0 + v.value));
        assert!(v.value <= v.upper_certificate.unwrap());
    }

    #[test]
    fn omega_f_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let sq = power_function(2.0).unwrap();
        for dim in 2..5 {
            let t = ComplexMatrix::ginibre(dim, &mut rng);
            let w = numerical_radius(&t, &budget()).unwrap().value;
            let single = omega_f(std::slice::from_ref(&t), &sq, &budget()).unwrap();
            assert!((single.value - w).abs() < 1e-6, "dim {dim}: {} vs {w}", single.value);
            let cart = omega_e(&[t.real_part(), t.imag_part()], &budget()).unwrap();
            assert!((cart.value - w).abs() < 1e-6, "dim {dim}: {} vs {w}", cart.value);
            let twice = omega_e(&[t.clone(), t.clone()], &budget()).unwrap();
            assert!((twice.value - 2f64.sqrt() * w).abs() < 1e-6);
            let q1 = omega_q(std::slice::from_ref(&t), 1.0, &budget()).unwrap();
            assert!((q1.value - w).abs() < 1e-6);
        }
        let id = power_function(1.0).unwrap();
        let ii = [ComplexMatrix::identity(2), ComplexMatrix::identity(2)];
        assert!((omega_f(&ii, &id, &budget()).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn omega_f_dim2_certificate() {
        let t = ComplexMatrix::from_rows(&[
            vec![Complex64::new(1.0, 0.5), Complex64::new(2.0, 0.0)],
            vec![I, Complex64::new(-0.5, 0.0)],
        ]);
        let f = power_function(1.5).unwrap();
        let v = omega_f(&[t.clone(), t.adjoint()], &f, &budget()).unwrap();
        let upper = v.upper_certificate.unwrap();
        assert!(v.value <= upper);
        let again = omega_f_at(&[t.clone(), t.adjoint()], &f, &v.lower_witness).unwrap();
        assert!((again - v.value).abs() <= 1e-10 * (1.0 + v.value));
    }

    #[test]
    fn deterministic_given_seed() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let ts: Vec<_> = (0..2).map(|_| ComplexMatrix::ginibre(3, &mut rng)).collect();
        let a = euclidean_norm(&ts, &budget()).unwrap();
        let b = euclidean_norm(&ts, &budget()).unwrap();
        assert_eq!(a, b);
        let f = power_function(2.0).unwrap();
        assert_eq!(
            omega_f(&ts, &f, &budget()).unwrap(),
            omega_f(&ts, &f, &budget()).unwrap()
        );
    }

    #[test]
    fn rejects_bad_budget() {
        let bad = OptimizerBudget {
            tolerance: 0.5,
            ..budget()
        };
        assert!(numerical_radius(&ComplexMatrix::identity(2), &bad).is_err());
        let bad = OptimizerBudget {
            restarts: 0,
            ..budget()
        };
        assert!(euclidean_norm(&[ComplexMatrix::identity(2)], &bad).is_err());
    }
}
