//! The scalar function `f` behind the f-operator radius.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre_unit;

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Upper end of the monotonicity validation grid.
const GRID_END: f64 = 1e3;
const GRID_STEPS: usize = 10_000;
const BRACKET_LIMIT: f64 = 1e30;
const BISECTION_STEPS: usize = 200;

/// A strictly increasing convex `f: [0, ∞) → [0, ∞)` with `f(0) = 0`.
///
/// Operator convexity is declared, not verified.
#[derive(Clone)]
pub struct ScalarRadiusFunction {
    name: String,
    evaluate: Evaluator,
    inverse: Option<Evaluator>,
    exponent: Option<f64>,
    is_convex: bool,
    is_operator_convex: bool,
}

impl fmt::Debug for ScalarRadiusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarRadiusFunction")
            .field("name", &self.name)
            .field("is_convex", &self.is_convex)
            .field("is_operator_convex", &self.is_operator_convex)
            .finish()
    }
}

impl fmt::Display for ScalarRadiusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl ScalarRadiusFunction {
    /// Validates `f(0) = 0`, strict increase on the grid `{0, 0.1, …, 1000}`
    /// and, when given, the inverse on the same grid.
    pub fn new<F, G>(
        name: impl Into<String>,
        evaluate: F,
        inverse: Option<G>,
        is_convex: bool,
        is_operator_convex: bool,
    ) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let f = Self {
            name: name.into(),
            evaluate: Arc::new(evaluate),
            inverse: inverse.map(|g| Arc::new(g) as Evaluator),
            exponent: None,
            is_convex,
            is_operator_convex,
        };
        f.validate()?;
        Ok(f)
    }

    /// `t ↦ t^q`, `q ≥ 1`, with closed-form inverse. Operator convex iff `q ≤ 2`.
    pub fn power(q: f64) -> Result<Self> {
        if !(q >= 1.0) || !q.is_finite() {
            return Err(Error::InvalidFunction(format!("power exponent must be >= 1, got {q}")));
        }
        let name = format!("pow:{q}");
        let mut f = if q == 1.0 {
            Self::new(name, |t| t, Some(|y: f64| y), true, true)?
        } else if q == 2.0 {
            Self::new(name, |t| t * t, Some(|y: f64| y.sqrt()), true, true)?
        } else {
            Self::new(
                name,
                move |t: f64| t.powf(q),
                Some(move |y: f64| y.powf(1.0 / q)),
                true,
                q <= 2.0,
            )?
        };
        f.exponent = Some(q);
        Ok(f)
    }

    #[cfg(test)]
    pub(crate) fn unchecked(name: &str, evaluate: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            name: name.into(),
            evaluate: Arc::new(evaluate),
            inverse: None,
            exponent: None,
            is_convex: true,
            is_operator_convex: true,
        }
    }

    fn validate(&self) -> Result<()> {
        let f0 = self.evaluate(0.0);
        if f0 != 0.0 {
            return Err(Error::InvalidFunction(format!("{}: f(0) = {f0}, must be 0", self.name)));
        }
        let h = GRID_END / GRID_STEPS as f64;
        let mut prev = f0;
        for k in 1..=GRID_STEPS {
            let t = k as f64 * h;
            let v = self.evaluate(t);
            if !v.is_finite() || !(v > prev) {
                return Err(Error::InvalidFunction(format!(
                    "{}: not strictly increasing near t = {t}",
                    self.name
                )));
            }
            prev = v;
        }
        if let Some(inv) = &self.inverse {
            for k in 0..=GRID_STEPS {
                let t = k as f64 * h;
                let back = inv(self.evaluate(t));
                if !((back - t).abs() <= 1e-9 * (1.0 + t)) {
                    return Err(Error::InvalidFunction(format!(
                        "{}: inverse mismatch at t = {t} (got {back})",
                        self.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn evaluate(&self, t: f64) -> f64 {
        (self.evaluate)(t)
    }

    pub fn is_convex(&self) -> bool {
        self.is_convex
    }

    pub fn is_operator_convex(&self) -> bool {
        self.is_operator_convex
    }

    /// The exponent `q` for members of the power family.
    pub fn exponent(&self) -> Option<f64> {
        self.exponent
    }

    pub fn has_closed_form_inverse(&self) -> bool {
        self.inverse.is_some()
    }

    /// `f⁻¹(y)`; see [`numeric_inverse`].
    pub fn inverse(&self, y: f64) -> Result<f64> {
        numeric_inverse(self, y)
    }

    /// Right derivative, closed form for the power family.
    pub fn derivative(&self, t: f64) -> f64 {
        match self.exponent {
            Some(1.0) => 1.0,
            Some(q) => q * t.max(0.0).powf(q - 1.0),
            None => {
                let h = 1e-7 * (1.0 + t.abs());
                (self.evaluate(t + h) - self.evaluate(t)) / h
            }
        }
    }
}

impl FromStr for ScalarRadiusFunction {
    type Err = Error;

    /// Parses `pow:<q>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once(':') {
            Some(("pow", q)) => {
                let q: f64 = q
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidFunction(format!("bad exponent in `{s}`")))?;
                Self::power(q)
            }
            _ => Err(Error::InvalidFunction(format!(
                "unknown function `{s}`; supported families: pow:<q> (q >= 1)"
            ))),
        }
    }
}

pub fn power_function(q: f64) -> Result<ScalarRadiusFunction> {
    ScalarRadiusFunction::power(q)
}

/// Solves `f(t) = y` for `t ≥ 0`.
///
/// Uses the closed-form inverse when present, otherwise expands the bracket
/// `[0, 1]` by doubling and bisects.
pub fn numeric_inverse(f: &ScalarRadiusFunction, y: f64) -> Result<f64> {
    if !(y >= 0.0) || !y.is_finite() {
        return Err(Error::InvalidParameter {
            name: "y".into(),
            value: y,
            range: "[0, inf)".into(),
        });
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    if let Some(inv) = &f.inverse {
        return Ok(inv(y));
    }
    let mut lo = 0.0;
    let mut hi = 1.0;
    while f.evaluate(hi) < y {
        lo = hi;
        hi *= 2.0;
        if hi > BRACKET_LIMIT {
            return Err(Error::InverseDivergence { target: y });
        }
    }
    let tol = 1e-12 * (1.0 + y);
    let mut best = hi;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let v = f.evaluate(mid);
        if (v - y).abs() < (f.evaluate(best) - y).abs() {
            best = mid;
        }
        if (v - y).abs() <= tol {
            return Ok(mid);
        }
        if v < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best)
}

/// The four terms of the Hermite–Hadamard refinement for a convex `f` on `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarissiTerms {
    /// `f((a+b)/2)`
    pub midpoint: f64,
    /// `l(λ)`
    pub interpolant: f64,
    /// `(1/(b−a)) ∫ₐᵇ f`
    pub mean: f64,
    /// `(f(a)+f(b))/2`
    pub endpoint_average: f64,
}

impl FarissiTerms {
    pub fn as_array(&self) -> [f64; 4] {
        [self.midpoint, self.interpolant, self.mean, self.endpoint_average]
    }
}

/// Evaluates `f((a+b)/2) ≤ l(λ) ≤ mean ≤ (f(a)+f(b))/2` for any real convex `f`.
pub fn farissi_chain(f: &dyn Fn(f64) -> f64, a: f64, b: f64, lambda: f64) -> Result<FarissiTerms> {
    if !(a < b) {
        return Err(Error::InvalidInterval { a, b });
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter {
            name: "lambda".into(),
            value: lambda,
            range: "[0, 1]".into(),
        });
    }
    let midpoint = f((a + b) / 2.0);
    let interpolant = (1.0 - lambda) * f(((1.0 - lambda) * a + (1.0 + lambda) * b) / 2.0)
        + lambda * f(((2.0 - lambda) * a + lambda * b) / 2.0);
    let rule = gauss_legendre_unit(64);
    let mean = rule.iter().map(|&(t, w)| w * f(a + (b - a) * t)).sum::<f64>();
    let endpoint_average = (f(a) + f(b)) / 2.0;
    Ok(FarissiTerms {
        midpoint,
        interpolant,
        mean,
        endpoint_average,
    })
}
