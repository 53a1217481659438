//! Side-by-side sharpness of upper bounds for the off-diagonal block radius.

use std::f64::consts::SQRT_2;
use std::io::Write;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{abs, offdiag_block, op_norm, sum_outer_grams, ComplexMatrix, I};
use crate::radii::{euclidean_norm, mix_seed, numerical_radius, omega_e, OptimizerBudget};
use crate::reference::{ReferencePair, BLOCK_BOUND_PAIRS, SQUARED_BOUND_PAIRS};
use crate::suite::Generator;

/// Quantity a bound is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundTarget {
    /// `ω([[O,T₁],[T₂*,O]])`.
    BlockOmega,
    /// `ω²([[O,T₁],[T₂*,O]])`.
    BlockOmegaSquared,
}

/// An upper bound for a function of `ω([[O,T₁],[T₂*,O]])`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Bound {
    /// `(‖T₁‖+‖T₂‖)/2`
    AvgNorms,
    /// `(ω(T₁+T₂*)+ω(T₁−T₂*))/2`
    AvgOmegas,
    /// `(1/√2)(ω(|T₁|+i|T₂|)ω(|T₁*|+i|T₂*|))^{1/2}`
    Newblock,
    /// `(1/√2)‖(T₁,T₂)‖ₑ`
    Thm0,
    /// `(√2/2)(ω_e(|T₁|,|T₂|)ω_e(|T₁*|,|T₂*|))^{1/2}`
    BlockWe,
    /// `((‖T₁‖+‖T₂‖)/2)²`
    AvgNormsSq,
    /// `½‖T₁T₁*+T₂T₂*‖`
    HalfNormSum,
    /// `½‖(T₁,T₂)‖ₑ²`
    Thm0Sq,
}

impl Bound {
    pub const ALL: [Bound; 8] = [
        Bound::AvgNorms,
        Bound::AvgOmegas,
        Bound::Newblock,
        Bound::Thm0,
        Bound::BlockWe,
        Bound::AvgNormsSq,
        Bound::HalfNormSum,
        Bound::Thm0Sq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Bound::AvgNorms => "avg-norms",
            Bound::AvgOmegas => "avg-omegas",
            Bound::Newblock => "newblock",
            Bound::Thm0 => "thm0",
            Bound::BlockWe => "block-we",
            Bound::AvgNormsSq => "avg-norms-sq",
            Bound::HalfNormSum => "half-norm-sum",
            Bound::Thm0Sq => "thm0-sq",
        }
    }

    pub fn target(self) -> BoundTarget {
        match self {
            Bound::AvgNormsSq | Bound::HalfNormSum | Bound::Thm0Sq => BoundTarget::BlockOmegaSquared,
            _ => BoundTarget::BlockOmega,
        }
    }

    pub fn evaluate(self, t1: &ComplexMatrix, t2: &ComplexMatrix, budget: &OptimizerBudget) -> Result<f64> {
        let omega = |t: &ComplexMatrix| numerical_radius(t, budget).map(|c| c.value);
        let avg_norms = || -> Result<f64> { Ok((op_norm(t1)? + op_norm(t2)?) / 2.0) };
        let norm_e = || euclidean_norm(&[t1.clone(), t2.clone()], budget).map(|c| c.value);
        Ok(match self {
            Bound::AvgNorms => avg_norms()?,
            Bound::AvgOmegas => {
                let t2s = t2.adjoint();
                (omega(&(t1 + &t2s))? + omega(&(t1 - &t2s))?) / 2.0
            }
            Bound::Newblock => {
                let pair = |a: &ComplexMatrix, b: &ComplexMatrix| -> Result<ComplexMatrix> {
                    Ok(&abs(a)? + &abs(b)?.scale_complex(I))
                };
                let left = omega(&pair(t1, t2)?)?;
                let right = omega(&pair(&t1.adjoint(), &t2.adjoint())?)?;
                (left * right).sqrt() / SQRT_2
            }
            Bound::Thm0 => norm_e()? / SQRT_2,
            Bound::BlockWe => {
                let left = omega_e(&[abs(t1)?, abs(t2)?], budget)?.value;
                let right = omega_e(&[abs(&t1.adjoint())?, abs(&t2.adjoint())?], budget)?.value;
                SQRT_2 / 2.0 * (left * right).sqrt()
            }
            Bound::AvgNormsSq => avg_norms()?.powi(2),
            Bound::HalfNormSum => op_norm(&sum_outer_grams(&[t1.clone(), t2.clone()]))? / 2.0,
            Bound::Thm0Sq => norm_e()?.powi(2) / 2.0,
        })
    }
}

impl FromStr for Bound {
    type Err = Error;

    /// Accepts bound names and the names of the registry checks they come from.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let alias = match s {
            "baseline-avg-norms" => "avg-norms",
            "baseline-avg-omegas" => "avg-omegas",
            "cor-newblock" => "newblock",
            "thm0-upper" => "thm0",
            "thm-block-we" => "block-we",
            other => other,
        };
        Bound::ALL
            .into_iter()
            .find(|b| b.name() == alias)
            .ok_or_else(|| Error::UnknownBound(s.to_string()))
    }
}

impl BoundTarget {
    pub fn label(self) -> &'static str {
        match self {
            BoundTarget::BlockOmega => "omega",
            BoundTarget::BlockOmegaSquared => "omega^2",
        }
    }

    pub fn evaluate(self, t1: &ComplexMatrix, t2: &ComplexMatrix, budget: &OptimizerBudget) -> Result<f64> {
        let w = numerical_radius(&offdiag_block(t1, t2)?, budget)?.value;
        Ok(match self {
            BoundTarget::BlockOmega => w,
            BoundTarget::BlockOmegaSquared => w * w,
        })
    }

    /// Embedded example pairs on which the bounds for this target were compared.
    pub fn reference_pairs(self) -> &'static [ReferencePair; 2] {
        match self {
            BoundTarget::BlockOmega => &BLOCK_BOUND_PAIRS,
            BoundTarget::BlockOmegaSquared => &SQUARED_BOUND_PAIRS,
        }
    }
}

/// Parses a comma-separated list of bounds sharing one target.
pub fn parse_bounds(spec: &str) -> Result<Vec<Bound>> {
    let bounds: Vec<Bound> = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_>>()?;
    let first = bounds
        .first()
        .ok_or_else(|| Error::IncompatibleBounds("no bounds given".into()))?;
    if let Some(other) = bounds.iter().find(|b| b.target() != first.target()) {
        return Err(Error::IncompatibleBounds(format!(
            "`{}` bounds {} but `{}` bounds {}",
            first.name(),
            first.target().label(),
            other.name(),
            other.target().label()
        )));
    }
    Ok(bounds)
}

/// Where compared inputs come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairSource {
    Random(Generator),
    /// The embedded example pairs for the bounds' target, cycled by trial.
    Paper,
}

impl FromStr for PairSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(PairSource::Paper),
            other => other.parse().map(PairSource::Random),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareConfig {
    pub bounds: Vec<Bound>,
    pub source: PairSource,
    pub trials: usize,
    pub dim: usize,
    pub seed: u64,
    pub budget: OptimizerBudget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub trial: usize,
    pub seed: u64,
    pub lhs: f64,
    pub bounds: Vec<f64>,
}

impl CompareRow {
    /// `bound − lhs` for every bound.
    pub fn margins(&self) -> Vec<f64> {
        self.bounds.iter().map(|b| b - self.lhs).collect()
    }

    /// Index of the smallest bound, ties to the first.
    pub fn winner(&self) -> Option<usize> {
        (0..self.bounds.len()).reduce(|best, i| if self.bounds[i] < self.bounds[best] { i } else { best })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSummary {
    pub bound: Bound,
    pub wins: usize,
    pub mean_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareTable {
    pub target: BoundTarget,
    pub rows: Vec<CompareRow>,
    pub summary: Vec<BoundSummary>,
}

impl CompareTable {
    /// True when every bound is the sharpest on at least one input.
    pub fn neither_dominates(&self) -> bool {
        self.summary.iter().all(|s| s.wins > 0)
    }

    pub fn summary_line(&self) -> String {
        let parts: Vec<String> = self
            .summary
            .iter()
            .map(|s| match s.mean_margin {
                Some(m) => format!(
                    "{} wins {} (mean margin {})",
                    s.bound.name(),
                    s.wins,
                    crate::format_sig(m)
                ),
                None => format!("{} wins {}", s.bound.name(), s.wins),
            })
            .collect();
        format!("{} trials: {}", self.rows.len(), parts.join(", "))
    }

    /// `trial,seed,<target>,<bound>,<bound>_margin,…`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["trial".to_string(), "seed".to_string(), self.target.label().to_string()];
        for s in &self.summary {
            header.push(s.bound.name().to_string());
            header.push(format!("{}_margin", s.bound.name()));
        }
        w.write_record(&header)?;
        for row in &self.rows {
            let mut record = vec![row.trial.to_string(), row.seed.to_string(), row.lhs.to_string()];
            for (b, m) in row.bounds.iter().zip(row.margins()) {
                record.push(b.to_string());
                record.push(m.to_string());
            }
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Evaluates every bound and their common left-hand side on each trial.
pub fn compare_bounds(config: &CompareConfig) -> Result<CompareTable> {
    let first = config
        .bounds
        .first()
        .ok_or_else(|| Error::IncompatibleBounds("no bounds given".into()))?;
    let target = first.target();
    if config.bounds.iter().any(|b| b.target() != target) {
        return Err(Error::IncompatibleBounds("bounds refer to different quantities".into()));
    }
    config.budget.validate()?;
    let rows: Vec<CompareRow> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let seed = mix_seed(config.seed, trial as u64);
            let (t1, t2) = match config.source {
                PairSource::Paper => target.reference_pairs()[trial % 2].matrices(),
                PairSource::Random(g) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    (g.sample(config.dim, &mut rng), g.sample(config.dim, &mut rng))
                }
            };
            Ok(CompareRow {
                trial,
                seed,
                lhs: target.evaluate(&t1, &t2, &config.budget)?,
                bounds: config
                    .bounds
                    .iter()
                    .map(|b| b.evaluate(&t1, &t2, &config.budget))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<_>>()?;

    let summary = config
        .bounds
        .iter()
        .enumerate()
        .map(|(i, &bound)| BoundSummary {
            bound,
            wins: rows.iter().filter(|r| r.winner() == Some(i)).count(),
            mean_margin: (!rows.is_empty())
                .then(|| rows.iter().map(|r| r.bounds[i] - r.lhs).sum::<f64>() / rows.len() as f64),
        })
        .collect();
    Ok(CompareTable { target, rows, summary })
}
