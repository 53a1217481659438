//! Operator radii of complex matrices and machine-checked inequalities between them.
//!
//! The crate computes the numerical radius `ω(T)`, the Euclidean operator norm
//! `‖(T₁,…,Tₙ)‖ₑ` and the f-operator radius `ω_f(T₁,…,Tₙ)` with certified
//! bounds, and evaluates a registry of inequality chains relating them.

pub mod compare;
pub mod error;
pub mod linalg;
pub mod matrix_io;
pub mod oracle;
pub mod quadrature;
pub mod radii;
pub mod reference;
pub mod registry;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEigen, UnitVector};
pub use num_complex::Complex64;
pub use radii::{CertifiedValue, OptimizerBudget, Witness};
pub use scalar::ScalarRadiusFunction;

/// Formats `x` with six significant digits, trailing zeros removed.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-4..=15).contains(&magnitude) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}
