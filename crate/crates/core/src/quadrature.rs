//! Gauss–Legendre rules and matrix-valued integrals over `[0, 1]`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::linalg::{apply_scalar_function_psd, ComplexMatrix};
use crate::scalar::ScalarRadiusFunction;

pub const DEFAULT_NODES: usize = 48;
const MAX_DOUBLINGS: usize = 3;

/// Nodes and weights of the `n`-point Gauss–Legendre rule mapped to `[0, 1]`.
pub fn gauss_legendre_unit(n: usize) -> Vec<(f64, f64)> {
    assert!(n > 0);
    let mut rule = vec![(0.0, 0.0); n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Newton on P_n starting from the Tricomi approximation
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = ((1.0 - x) / 2.0, w / 2.0);
        rule[n - 1 - i] = ((1.0 + x) / 2.0, w / 2.0);
    }
    rule
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

fn integrate_once(
    f: &ScalarRadiusFunction,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    nodes: usize,
) -> Result<ComplexMatrix> {
    let mut acc = ComplexMatrix::zeros(a.dim());
    for (t, w) in gauss_legendre_unit(nodes) {
        let point = &a.scale(t) + &b.scale(1.0 - t);
        let value = apply_scalar_function_psd(f, &point)?;
        acc = &acc + &value.scale(w);
    }
    Ok(acc)
}

/// `∫₀¹ f(tA + (1−t)B) dt` for Hermitian PSD `A`, `B`.
///
/// Starts with `nodes` Gauss–Legendre points and doubles (at most three times)
/// until successive results agree to `1e-10·(1+‖result‖_F)`.
pub fn integrate_matrix_function(
    f: &ScalarRadiusFunction,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    nodes: usize,
) -> Result<ComplexMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let mut n = nodes.max(1);
    let mut previous = integrate_once(f, a, b, n)?;
    let mut distance = f64::INFINITY;
    for _ in 0..MAX_DOUBLINGS {
        n *= 2;
        let next = integrate_once(f, a, b, n)?;
        distance = (&next - &previous).frobenius_norm();
        if distance <= 1e-10 * (1.0 + next.frobenius_norm()) {
            return Ok(next);
        }
        previous = next;
    }
    Err(Error::QuadratureNotConverged { nodes: n, distance })
}
