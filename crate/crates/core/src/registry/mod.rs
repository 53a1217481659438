//! Named, machine-checkable inequality chains between operator radii.
//!
//! A check evaluates an ordered list of terms `t₀, t₁, …` that should satisfy
//! `tᵢ ≤ tᵢ₊₁` (or `t₀ = t₁` for equalities). Terms computed by a supremum
//! search are lower estimates of the true value, so a failing link whose larger
//! side is such a term is re-evaluated with a larger budget before a verdict.

mod bounds;
mod checks;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitVector};
use crate::radii::OptimizerBudget;
use crate::scalar::ScalarRadiusFunction;
use crate::Complex64;

pub use bounds::{
    interpolation_bounds, mixed_powers, pair_interpolation_norms, product_bounds, InterpolationBounds,
    InterpolationNorms,
};

/// Maximum number of budget escalations before a verdict.
pub const MAX_ESCALATIONS: usize = 2;
/// Budget multiplier per escalation.
pub const ESCALATION_FACTOR: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    InequalityChain,
    Equality,
}

/// Shape of the matrix inputs of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arity {
    /// No matrix inputs.
    None,
    /// `T`.
    Single,
    /// `T₁, T₂`.
    Pair,
    /// `T₁,…,Tₙ`, `n ≥ 1`.
    Tuple,
    /// `S₁,…,Sₙ, T₁,…,Tₙ`, `n ≥ 1`.
    PairedTuple,
}

impl Arity {
    pub fn accepts(self, count: usize) -> bool {
        match self {
            Arity::None => count == 0,
            Arity::Single => count == 1,
            Arity::Pair => count == 2,
            Arity::Tuple => count >= 1,
            Arity::PairedTuple => count >= 2 && count.is_multiple_of(2),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Arity::None => "no matrices",
            Arity::Single => "1 matrix (T)",
            Arity::Pair => "2 matrices (T1, T2)",
            Arity::Tuple => "n >= 1 matrices (T1..Tn)",
            Arity::PairedTuple => "2n matrices (S1..Sn, T1..Tn)",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParameterSpec {
    pub name: &'static str,
    pub range: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckDescriptor {
    pub name: &'static str,
    pub kind: CheckKind,
    pub arity: Arity,
    pub parameters: &'static [ParameterSpec],
    pub hypotheses: &'static [&'static str],
    pub statement: &'static str,
}

const ALPHA: ParameterSpec = ParameterSpec {
    name: "alpha",
    range: "[0, 1]",
};
const LAMBDA: ParameterSpec = ParameterSpec {
    name: "lambda",
    range: "[0, 1]",
};
const F: ParameterSpec = ParameterSpec {
    name: "f",
    range: "pow:<q>, q >= 1",
};
const P: ParameterSpec = ParameterSpec {
    name: "p",
    range: "[1, 2]",
};
const X: ParameterSpec = ParameterSpec {
    name: "x",
    range: "unit vector",
};
const Y: ParameterSpec = ParameterSpec {
    name: "y",
    range: "unit vector",
};

const OP_CONVEX: &str = "f operator convex";

const fn chain(name: &'static str, arity: Arity, statement: &'static str) -> CheckDescriptor {
    CheckDescriptor {
        name,
        kind: CheckKind::InequalityChain,
        arity,
        parameters: &[],
        hypotheses: &[],
        statement,
    }
}

const fn equality(name: &'static str, arity: Arity, statement: &'static str) -> CheckDescriptor {
    CheckDescriptor {
        kind: CheckKind::Equality,
        ..chain(name, arity, statement)
    }
}

static REGISTRY: [CheckDescriptor; 31] = [
    chain("equiv-intro", Arity::Single, "‖T‖/2 ≤ ω(T) ≤ ‖T‖"),
    chain("kittaneh-1", Arity::Single, "ω(T) ≤ ½‖|T|+|T*|‖"),
    chain("kittaneh-2", Arity::Single, "¼‖|T|²+|T*|²‖ ≤ ω²(T) ≤ ½‖|T|²+|T*|²‖"),
    equality("hirz-equality", Arity::Pair, "½ sup_θ‖A+e^{iθ}B*‖ = ω([[O,A],[B,O]])"),
    chain("prod-block", Arity::Pair, "max{ω(A*B), ω(BA*)} ≤ ω²([[O,A*],[B,O]])"),
    chain("norme-upper", Arity::Tuple, "‖(T₁,…,Tₙ)‖ₑ ≤ ‖Σ TᵢTᵢ*‖^{1/2}"),
    CheckDescriptor {
        parameters: &[X, Y, ALPHA],
        ..chain(
            "mixed-schwarz",
            Arity::Single,
            "|⟨Tx,y⟩|² ≤ ⟨|T|^{2(1−α)}x,x⟩⟨|T*|^{2α}y,y⟩",
        )
    },
    chain("thm0-upper", Arity::Pair, "ω([[O,T₁],[T₂*,O]]) ≤ (1/√2)‖(T₁,T₂)‖ₑ"),
    chain("cor02-chain", Arity::Single, "ω²(T) ≤ ½‖(T,T*)‖ₑ² ≤ ½‖TT*+T*T‖"),
    chain("prod-refine", Arity::Pair, "ω(B*A) ≤ ½‖(A,B)‖ₑ² ≤ ½‖|A|²+|B|²‖"),
    chain(
        "cor04-chain",
        Arity::Single,
        "ω([[O,ℜT],[ℑT,O]]) ≤ ½‖T*T+TT*‖^{1/2} ≤ ω(T)",
    ),
    chain("thm08-lower", Arity::Pair, "½‖(T₁,T₂)‖ₑ ≤ ω([[O,T₁],[T₂*,O]])"),
    chain(
        "blocks-chain-1",
        Arity::Pair,
        "ω([[O,(T₁+T₂)/2],[((T₁−T₂)/2)*,O]]) ≤ ½‖(T₁,T₂)‖ₑ ≤ ω([[O,T₁],[T₂*,O]])",
    ),
    chain(
        "blocks-chain-2",
        Arity::Pair,
        "½ω([[O,T₁],[T₂*,O]]) ≤ (√2/4)‖(T₁,T₂)‖ₑ ≤ ω([[O,(T₁+T₂)/2],[((T₁−T₂)/2)*,O]])",
    ),
    equality("parallelogram-e", Arity::Pair, "(√2/2)‖(T₁+T₂,T₁−T₂)‖ₑ = ‖(T₁,T₂)‖ₑ"),
    equality("tt-identity", Arity::Single, "√2‖T‖ = ‖(T,T)‖ₑ"),
    chain(
        "blockss-chain-1",
        Arity::Single,
        "ω([[O,ℜT],[ℑT,O]]) ≤ ½‖(T*,T)‖ₑ ≤ ω(T)",
    ),
    chain(
        "blockss-chain-2",
        Arity::Single,
        "½ω(T) ≤ (√2/4)‖(T*,T)‖ₑ ≤ ω([[O,ℜT],[ℑT,O]])",
    ),
    chain(
        "thm-i-upper",
        Arity::Pair,
        "‖(T₁,T₂)‖ₑ ≤ (ω(|T₁|+i|T₂|)·ω(|T₁*|+i|T₂*|))^{1/2}",
    ),
    chain(
        "cor-newblock",
        Arity::Pair,
        "ω([[O,T₁],[T₂*,O]]) ≤ (1/√2)(ω(|T₁|+i|T₂|)·ω(|T₁*|+i|T₂*|))^{1/2}",
    ),
    chain("baseline-avg-norms", Arity::Pair, "ω([[O,T₁],[T₂*,O]]) ≤ (‖T₁‖+‖T₂‖)/2"),
    chain(
        "baseline-avg-omegas",
        Arity::Pair,
        "ω([[O,T₁],[T₂*,O]]) ≤ (ω(T₁+T₂*)+ω(T₁−T₂*))/2",
    ),
    chain(
        "thm-block-we",
        Arity::Pair,
        "ω([[O,T₁],[T₂*,O]]) ≤ (√2/2)(ω_e(|T₁|,|T₂|)·ω_e(|T₁*|,|T₂*|))^{1/2}",
    ),
    CheckDescriptor {
        hypotheses: &["T accretive-dissipative (ℜT ⪰ 0, ℑT ⪰ 0)"],
        ..chain("accdiss-chain", Arity::Single, "‖T‖ ≤ 2ω([[O,ℜT],[ℑT,O]]) ≤ √2ω(T)")
    },
    CheckDescriptor {
        parameters: &[ALPHA, LAMBDA, F],
        hypotheses: &[OP_CONVEX],
        ..chain("thm2.2-chain", Arity::Tuple, "ω_f(T₁,…,Tₙ) ≤ B₁(α,λ) ≤ B₂(α) ≤ B₃(α)")
    },
    CheckDescriptor {
        parameters: &[LAMBDA, F],
        hypotheses: &[OP_CONVEX],
        ..chain("cor2.2-chain", Arity::Tuple, "ω_f(T₁,…,Tₙ) ≤ B₁(½,λ) ≤ B₂(½) ≤ B₃(½)")
    },
    CheckDescriptor {
        parameters: &[F],
        hypotheses: &[OP_CONVEX],
        ..chain(
            "eq2.6-chain",
            Arity::Tuple,
            "ω_f ≤ f⁻¹(½‖Σ f((|Tⱼ|+3|Tⱼ*|)/4)+f((3|Tⱼ|+|Tⱼ*|)/4)‖) ≤ B₂(½) ≤ B₃(½)",
        )
    },
    CheckDescriptor {
        parameters: &[P, LAMBDA],
        hypotheses: &["1 ≤ p ≤ 2"],
        ..chain(
            "cor2.3-chain",
            Arity::Tuple,
            "ω_p(T₁,…,Tₙ) ≤ B₁(½,λ) ≤ B₂(½) ≤ B₃(½) for f = t^p",
        )
    },
    chain(
        "sm2021-refine",
        Arity::Single,
        "ω²(T) ≤ ½‖((|T|+3|T*|)/4)²+((3|T|+|T*|)/4)²‖ ≤ ‖∫₀¹(t|T|+(1−t)|T*|)²dt‖ ≤ ½‖|T|²+|T*|²‖",
    ),
    CheckDescriptor {
        parameters: &[F],
        hypotheses: &[OP_CONVEX],
        ..chain(
            "thm-squared-chain",
            Arity::PairedTuple,
            "ω_f(T₁*S₁,…,Tₙ*Sₙ) ≤ f⁻¹‖∫₀¹Σ f(t|Sⱼ|²+(1−t)|Tⱼ|²)dt‖ ≤ f⁻¹(½‖Σ f(|Sⱼ|²)+f(|Tⱼ|²)‖)",
        )
    },
    equality("lambda-sphere-max", Arity::None, "max{|λ₁+λ₂| : |λ₁|²+|λ₂|²=1} = √2"),
];

/// The full registry in its stable order.
pub fn list_checks() -> &'static [CheckDescriptor] {
    &REGISTRY
}

pub fn find_check(name: &str) -> Result<&'static CheckDescriptor> {
    REGISTRY
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownCheck(name.to_string()))
}

/// Optional parameters of a check. Unset values take check-specific defaults:
/// `α = λ = ½`, `f = t²`, `p` equal to the exponent of `f`,
/// and `x`, `y` drawn from the budget seed.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Complex64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Complex64>>,
}

pub(crate) struct Resolved {
    pub alpha: f64,
    pub lambda: f64,
    pub f: ScalarRadiusFunction,
    pub p: f64,
    pub x: Option<UnitVector>,
    pub y: Option<UnitVector>,
}

fn unit_param(name: &str, value: Option<f64>, default: f64) -> Result<f64> {
    let v = value.unwrap_or(default);
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter {
            name: name.into(),
            value: v,
            range: "[0, 1]".into(),
        });
    }
    Ok(v)
}

fn unit_vector_param(name: &str, v: &Option<Vec<Complex64>>) -> Result<Option<UnitVector>> {
    match v {
        None => Ok(None),
        Some(v) => UnitVector::normalize(v.clone())
            .map(Some)
            .ok_or_else(|| Error::InvalidParameter {
                name: name.into(),
                value: 0.0,
                range: "nonzero vector".into(),
            }),
    }
}

impl CheckParams {
    pub(crate) fn resolve(&self) -> Result<Resolved> {
        let f: ScalarRadiusFunction = self.f.as_deref().unwrap_or("pow:2").parse()?;
        let p = match (self.p, f.exponent()) {
            (Some(p), _) => p,
            (None, Some(q)) => q,
            (None, None) => 2.0,
        };
        Ok(Resolved {
            alpha: unit_param("alpha", self.alpha, 0.5)?,
            lambda: unit_param("lambda", self.lambda, 0.5)?,
            f,
            p,
            x: unit_vector_param("x", &self.x)?,
            y: unit_vector_param("y", &self.y)?,
        })
    }

    /// Fills `x` and `y` with random unit vectors when unset.
    pub(crate) fn random_vectors(dim: usize, seed: u64) -> (UnitVector, UnitVector) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (UnitVector::random(dim, &mut rng), UnitVector::random(dim, &mut rng))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Violation,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub check_name: String,
    pub kind: CheckKind,
    pub term_labels: Vec<String>,
    pub term_values: Vec<f64>,
    pub margins: Vec<f64>,
    pub verdict: Verdict,
    pub tolerance_used: f64,
    pub escalations: usize,
}

impl ChainReport {
    /// The most adverse margin: `min mᵢ` for chains, `−|m|` for equalities.
    pub fn worst_margin(&self) -> f64 {
        match self.kind {
            CheckKind::InequalityChain => self.margins.iter().copied().fold(f64::INFINITY, f64::min),
            CheckKind::Equality => -self.margins[0].abs(),
        }
    }
}

/// One term of a chain. `sup` marks values obtained by a supremum search,
/// which can only underestimate.
#[derive(Debug, Clone)]
pub(crate) struct Term {
    pub label: String,
    pub value: f64,
    pub sup: bool,
}

impl Term {
    pub fn exact(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
            sup: false,
        }
    }

    pub fn sup(label: impl Into<String>, value: f64) -> Self {
        Self {
            label: label.into(),
            value,
            sup: true,
        }
    }
}

/// `ε = 1e-7·(1 + max|term|) + 1e-9`.
pub fn chain_tolerance(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    1e-7 * (1.0 + scale) + 1e-9
}

/// Indices of failing links and the amount by which each fails.
fn deficits(kind: CheckKind, terms: &[Term], eps: f64) -> Vec<(usize, f64)> {
    match kind {
        CheckKind::Equality => {
            let d = (terms[1].value - terms[0].value).abs();
            if d > eps {
                vec![(0, d)]
            } else {
                vec![]
            }
        }
        CheckKind::InequalityChain => terms
            .windows(2)
            .enumerate()
            .filter_map(|(i, w)| {
                let d = w[0].value - w[1].value;
                (d > eps).then_some((i, d))
            })
            .collect(),
    }
}

fn escalatable(kind: CheckKind, terms: &[Term], link: usize) -> bool {
    match kind {
        CheckKind::Equality => terms[0].sup || terms[1].sup,
        CheckKind::InequalityChain => terms[link + 1].sup,
    }
}

fn check_inputs(desc: &CheckDescriptor, matrices: &[ComplexMatrix]) -> Result<()> {
    if !desc.arity.accepts(matrices.len()) {
        return Err(Error::Arity {
            check: desc.name.to_string(),
            expected: desc.arity.describe().to_string(),
            found: matrices.len(),
        });
    }
    if let Some(first) = matrices.first() {
        for m in matrices {
            if m.dim() != first.dim() {
                return Err(Error::DimensionMismatch {
                    expected: first.dim(),
                    found: m.dim(),
                });
            }
        }
    }
    Ok(())
}

/// Evaluates a registered check on `matrices`.
///
/// Unmet hypotheses return [`Error::Hypothesis`]; they never produce a verdict.
pub fn evaluate_check(
    name: &str,
    matrices: &[ComplexMatrix],
    params: &CheckParams,
    budget: &OptimizerBudget,
) -> Result<ChainReport> {
    let desc = find_check(name)?;
    check_inputs(desc, matrices)?;
    budget.validate()?;
    let resolved = params.resolve()?;
    checks::check_hypotheses(desc, matrices, &resolved)?;

    let evaluate = |b: &OptimizerBudget| -> Result<Vec<Term>> {
        let terms = checks::terms(desc.name, matrices, &resolved, b)?;
        if let Some(t) = terms.iter().find(|t| !t.value.is_finite()) {
            return Err(Error::NonFiniteTerm {
                check: desc.name.to_string(),
                label: t.label.clone(),
            });
        }
        Ok(terms)
    };
    let mut terms = evaluate(budget)?;
    let mut escalations = 0;
    while escalations < MAX_ESCALATIONS {
        let eps = chain_tolerance(&terms.iter().map(|t| t.value).collect::<Vec<_>>());
        let failing = deficits(desc.kind, &terms, eps);
        if !failing.iter().any(|&(i, _)| escalatable(desc.kind, &terms, i)) {
            break;
        }
        escalations += 1;
        let bigger = budget.scaled(ESCALATION_FACTOR.pow(escalations as u32));
        let fresh = evaluate(&bigger)?;
        for (old, new) in terms.iter_mut().zip(fresh) {
            if old.sup {
                old.value = old.value.max(new.value);
            }
        }
    }

    let values: Vec<f64> = terms.iter().map(|t| t.value).collect();
    let eps = chain_tolerance(&values);
    let worst = deficits(desc.kind, &terms, eps)
        .into_iter()
        .fold(0.0f64, |m, (_, d)| m.max(d));
    let verdict = if worst == 0.0 {
        Verdict::Pass
    } else if worst < 10.0 * eps {
        Verdict::Inconclusive
    } else {
        Verdict::Violation
    };
    Ok(ChainReport {
        check_name: desc.name.to_string(),
        kind: desc.kind,
        term_labels: terms.iter().map(|t| t.label.clone()).collect(),
        margins: values.windows(2).map(|w| w[1] - w[0]).collect(),
        term_values: values,
        verdict,
        tolerance_used: eps,
        escalations,
    })
}

#[cfg(test)]
mod tests;
