//! Upper bounds for `ω_f` built from operator-convex interpolation.
//!
//! For each `Tⱼ` put `Aⱼ = |Tⱼ|^{2α}` and `Bⱼ = |Tⱼ*|^{2(1−α)}`. The three
//! bounds are `f⁻¹` of the norms of
//!
//! * `Σⱼ (1−λ) f(((1−λ)Aⱼ + (1+λ)Bⱼ)/2) + λ f(((2−λ)Aⱼ + λBⱼ)/2)`,
//! * `Σⱼ ∫₀¹ f(tAⱼ + (1−t)Bⱼ) dt`,
//! * `½ Σⱼ f(Aⱼ) + f(Bⱼ)`.

use crate::error::{Error, Result};
use crate::linalg::{apply_scalar_function_psd, op_norm, psd_power, ComplexMatrix};
use crate::quadrature::{integrate_matrix_function, DEFAULT_NODES};
use crate::scalar::{numeric_inverse, ScalarRadiusFunction};

/// Norms of the three interpolation matrices, before applying `f⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationNorms {
    pub interpolant: f64,
    pub integral: f64,
    pub endpoint: f64,
}

/// `B₁ ≤ B₂ ≤ B₃`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationBounds {
    pub b1: f64,
    pub b2: f64,
    pub b3: f64,
}

fn check_unit(name: &str, value: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&value) {
        return Err(Error::InvalidParameter {
            name: name.into(),
            value,
            range: "[0, 1]".into(),
        });
    }
    Ok(())
}

fn gram(t: &ComplexMatrix) -> ComplexMatrix {
    &t.adjoint() * t
}

fn outer_gram(t: &ComplexMatrix) -> ComplexMatrix {
    t * &t.adjoint()
}

/// Norms of the interpolation matrices for the pairs `(Aⱼ, Bⱼ)`.
pub fn pair_interpolation_norms(
    pairs: &[(ComplexMatrix, ComplexMatrix)],
    f: &ScalarRadiusFunction,
    lambda: f64,
) -> Result<InterpolationNorms> {
    check_unit("lambda", lambda)?;
    let (first, _) = pairs.first().ok_or(Error::EmptyTuple)?;
    let d = first.dim();
    let (mut m1, mut m2, mut m3) = (
        ComplexMatrix::zeros(d),
        ComplexMatrix::zeros(d),
        ComplexMatrix::zeros(d),
    );
    for (a, b) in pairs {
        let near = &a.scale(0.5 * (1.0 - lambda)) + &b.scale(0.5 * (1.0 + lambda));
        let far = &a.scale(0.5 * (2.0 - lambda)) + &b.scale(0.5 * lambda);
        m1 = &m1 + &apply_scalar_function_psd(f, &near)?.scale(1.0 - lambda);
        m1 = &m1 + &apply_scalar_function_psd(f, &far)?.scale(lambda);
        m2 = &m2 + &integrate_matrix_function(f, a, b, DEFAULT_NODES)?;
        let ends = &apply_scalar_function_psd(f, a)? + &apply_scalar_function_psd(f, b)?;
        m3 = &m3 + &ends.scale(0.5);
    }
    Ok(InterpolationNorms {
        interpolant: op_norm(&m1)?,
        integral: op_norm(&m2)?,
        endpoint: op_norm(&m3)?,
    })
}

/// `(|Tⱼ|^{2α}, |Tⱼ*|^{2(1−α)})` for every `Tⱼ`.
pub fn mixed_powers(ts: &[ComplexMatrix], alpha: f64) -> Result<Vec<(ComplexMatrix, ComplexMatrix)>> {
    check_unit("alpha", alpha)?;
    ts.iter()
        .map(|t| Ok((psd_power(&gram(t), alpha)?, psd_power(&outer_gram(t), 1.0 - alpha)?)))
        .collect()
}

/// `B₁, B₂, B₃` for `T₁,…,Tₙ` at weights `α`, `λ`.
pub fn interpolation_bounds(
    ts: &[ComplexMatrix],
    f: &ScalarRadiusFunction,
    alpha: f64,
    lambda: f64,
) -> Result<InterpolationBounds> {
    let norms = pair_interpolation_norms(&mixed_powers(ts, alpha)?, f, lambda)?;
    Ok(InterpolationBounds {
        b1: numeric_inverse(f, norms.interpolant)?,
        b2: numeric_inverse(f, norms.integral)?,
        b3: numeric_inverse(f, norms.endpoint)?,
    })
}

/// Upper bounds for `ω_f(T₁*S₁,…,Tₙ*Sₙ)`:
/// `f⁻¹‖Σ ∫ f(t|Sⱼ|² + (1−t)|Tⱼ|²)‖` and `f⁻¹(½‖Σ f(|Sⱼ|²) + f(|Tⱼ|²)‖)`.
pub fn product_bounds(ss: &[ComplexMatrix], ts: &[ComplexMatrix], f: &ScalarRadiusFunction) -> Result<(f64, f64)> {
    if ss.len() != ts.len() {
        return Err(Error::IncompatibleBounds(format!(
            "{} left factors but {} right factors",
            ss.len(),
            ts.len()
        )));
    }
    let pairs: Vec<_> = ss.iter().zip(ts).map(|(s, t)| (gram(s), gram(t))).collect();
    let norms = pair_interpolation_norms(&pairs, f, 0.0)?;
    Ok((numeric_inverse(f, norms.integral)?, numeric_inverse(f, norms.endpoint)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::power_function;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bounds_are_ordered() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for q in [1.0, 1.5, 2.0] {
            let f = power_function(q).unwrap();
            for &(alpha, lambda) in &[(0.0, 0.0), (0.25, 0.3), (0.5, 0.7), (1.0, 1.0)] {
                let ts: Vec<_> = (0..2).map(|_| ComplexMatrix::ginibre(3, &mut rng)).collect();
                let b = interpolation_bounds(&ts, &f, alpha, lambda).unwrap();
                let eps = 1e-9 * (1.0 + b.b3);
                assert!(b.b1 <= b.b2 + eps && b.b2 <= b.b3 + eps, "{b:?}");
            }
        }
    }

    #[test]
    fn identity_function_collapses() {
        // f = t is affine, so all three bounds equal ‖Σ (Aⱼ + Bⱼ)/2‖.
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let t = ComplexMatrix::ginibre(2, &mut rng);
        let f = power_function(1.0).unwrap();
        let b = interpolation_bounds(std::slice::from_ref(&t), &f, 0.5, 0.4).unwrap();
        assert!((b.b1 - b.b3).abs() < 1e-10 && (b.b2 - b.b3).abs() < 1e-10);
    }

    #[test]
    fn rejects_out_of_range_weights() {
        let t = ComplexMatrix::identity(2);
        let f = power_function(2.0).unwrap();
        assert!(interpolation_bounds(std::slice::from_ref(&t), &f, 1.5, 0.5).is_err());
        assert!(interpolation_bounds(&[t], &f, 0.5, -0.1).is_err());
    }
}
