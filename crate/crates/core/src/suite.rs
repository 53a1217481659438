//! Seeded self-test runs of the registry over random inputs.

use std::collections::BTreeMap;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, UnitVector, I};
use crate::matrix_io::{matrices_from_value, matrices_to_value};
use crate::radii::{mix_seed, OptimizerBudget};
use crate::registry::{evaluate_check, find_check, list_checks, Arity, ChainReport, CheckParams, Verdict};

/// Random input families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Generator {
    /// Entries `(N + iN)/√2` with `N` standard normal.
    Ginibre,
    /// Real integer entries, uniform on `[−5, 5]`.
    Integer,
    /// `G*G + i·H*H` for Ginibre `G`, `H`; both Cartesian parts are PSD.
    Accdiss,
    /// Strictly upper-triangular Ginibre matrices.
    Nilpotent2,
}

impl Generator {
    pub const ALL: [Generator; 4] = [
        Generator::Ginibre,
        Generator::Integer,
        Generator::Accdiss,
        Generator::Nilpotent2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Ginibre => "ginibre",
            Generator::Integer => "integer",
            Generator::Accdiss => "accdiss",
            Generator::Nilpotent2 => "nilpotent2",
        }
    }

    pub fn sample<R: Rng + ?Sized>(self, dim: usize, rng: &mut R) -> ComplexMatrix {
        match self {
            Generator::Ginibre => ComplexMatrix::ginibre(dim, rng),
            Generator::Integer => {
                let rows: Vec<Vec<_>> = (0..dim)
                    .map(|_| (0..dim).map(|_| (rng.random_range(-5i32..=5) as f64).into()).collect())
                    .collect();
                ComplexMatrix::from_rows(&rows)
            }
            Generator::Accdiss => {
                let g = ComplexMatrix::ginibre(dim, rng);
                let h = ComplexMatrix::ginibre(dim, rng);
                &(&g.adjoint() * &g) + &(&h.adjoint() * &h).scale_complex(I)
            }
            Generator::Nilpotent2 => {
                let g = ComplexMatrix::ginibre(dim, rng);
                let rows: Vec<Vec<_>> = (0..dim)
                    .map(|i| (0..dim).map(|j| if j > i { g.get(i, j) } else { 0.0.into() }).collect())
                    .collect();
                ComplexMatrix::from_rows(&rows)
            }
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::UnknownGenerator(s.to_string()))
    }
}

/// Parses `all` or a comma-separated list of check names.
pub fn parse_check_list(spec: &str) -> Result<Vec<String>> {
    if spec.trim() == "all" {
        return Ok(list_checks().iter().map(|c| c.name.to_string()).collect());
    }
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| find_check(s).map(|c| c.name.to_string()))
        .collect()
}

/// Scalar functions cycled through when none is configured.
pub const DEFAULT_FUNCTIONS: [&str; 3] = ["pow:1", "pow:1.5", "pow:2"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub checks: Vec<String>,
    pub trials: usize,
    pub dim: usize,
    pub generator: Generator,
    /// Per-check generator replacing `generator`.
    #[serde(default)]
    pub generator_overrides: BTreeMap<String, Generator>,
    pub seed: u64,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub lambda: Option<f64>,
    #[serde(default)]
    pub f: Option<String>,
    pub budget: OptimizerBudget,
}

impl SuiteConfig {
    pub fn new(checks: Vec<String>, trials: usize, dim: usize, generator: Generator, seed: u64) -> Self {
        Self {
            checks,
            trials,
            dim,
            generator,
            generator_overrides: BTreeMap::new(),
            seed,
            alpha: None,
            lambda: None,
            f: None,
            budget: OptimizerBudget::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidParameter {
                name: "dim".into(),
                value: 0.0,
                range: ">= 1".into(),
            });
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter {
                name: "trials".into(),
                value: 0.0,
                range: ">= 1".into(),
            });
        }
        for name in self.checks.iter().chain(self.generator_overrides.keys()) {
            find_check(name)?;
        }
        self.budget.validate()
    }

    fn generator_for(&self, check: &str) -> Generator {
        self.generator_overrides.get(check).copied().unwrap_or(self.generator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Violation,
    Inconclusive,
    HypothesisViolation,
    Error,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Violation => "violation",
            Outcome::Inconclusive => "inconclusive",
            Outcome::HypothesisViolation => "hypothesis-violation",
            Outcome::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub check: String,
    pub trial: usize,
    pub seed: u64,
    pub outcome: Outcome,
    pub margin: Option<f64>,
    pub escalations: usize,
    pub terms: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

/// Inputs and parameters of a failing trial, re-runnable with [`replay`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ViolationWitness {
    pub check: String,
    pub trial: usize,
    pub seed: u64,
    /// A matrix-file object.
    pub inputs: Value,
    pub params: CheckParams,
    pub budget: OptimizerBudget,
    pub term_labels: Vec<String>,
    pub term_values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub generator: Generator,
    pub trials: usize,
    pub pass: usize,
    pub violation: usize,
    pub inconclusive: usize,
    pub hypothesis_violation: usize,
    pub errors: usize,
    /// Most adverse margin over evaluated trials.
    pub worst_margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub summaries: Vec<CheckSummary>,
    pub violations: Vec<ViolationWitness>,
    pub rows: Vec<TrialRecord>,
}

impl SuiteReport {
    fn total(&self, field: impl Fn(&CheckSummary) -> usize) -> usize {
        self.summaries.iter().map(field).sum()
    }

    pub fn violation_count(&self) -> usize {
        self.total(|s| s.violation)
    }

    pub fn inconclusive_count(&self) -> usize {
        self.total(|s| s.inconclusive)
    }

    pub fn hypothesis_count(&self) -> usize {
        self.total(|s| s.hypothesis_violation)
    }

    pub fn error_count(&self) -> usize {
        self.total(|s| s.errors)
    }

    /// Trials that reached a verdict.
    pub fn verdict_count(&self) -> usize {
        self.total(|s| s.pass + s.violation + s.inconclusive)
    }

    pub fn inconclusive_rate(&self) -> f64 {
        match self.verdict_count() {
            0 => 0.0,
            n => self.inconclusive_count() as f64 / n as f64,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Rows as CSV: `check,trial,seed,verdict,margin,terms…`, one term per
    /// trailing field.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(out);
        w.write_record(["check", "trial", "seed", "verdict", "margin", "terms"])?;
        for row in &self.rows {
            let mut record = vec![
                row.check.clone(),
                row.trial.to_string(),
                row.seed.to_string(),
                row.outcome.name().to_string(),
                row.margin.map(|m| m.to_string()).unwrap_or_default(),
            ];
            record.extend(row.terms.iter().map(f64::to_string));
            w.write_record(&record)?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Matrix inputs and parameters of one trial.
pub fn trial_inputs(config: &SuiteConfig, check: &str, trial: usize) -> Result<(Vec<ComplexMatrix>, CheckParams)> {
    let desc = find_check(check)?;
    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(config.seed, trial as u64));
    let generator = config.generator_for(check);
    let count = match desc.arity {
        Arity::None => 0,
        Arity::Single => 1,
        Arity::Pair => 2,
        Arity::Tuple => 1 + trial % 3,
        Arity::PairedTuple => 2 * (1 + trial % 2),
    };
    let matrices: Vec<ComplexMatrix> = (0..count).map(|_| generator.sample(config.dim, &mut rng)).collect();

    let mut params = CheckParams::default();
    for p in desc.parameters {
        match p.name {
            "alpha" => params.alpha = Some(config.alpha.unwrap_or_else(|| rng.random())),
            "lambda" => params.lambda = Some(config.lambda.unwrap_or_else(|| rng.random())),
            "f" | "p" => {
                let f = config
                    .f
                    .clone()
                    .unwrap_or_else(|| DEFAULT_FUNCTIONS[trial % 3].to_string());
                params.f = Some(f);
            }
            "x" => params.x = Some(UnitVector::random(config.dim, &mut rng).into_inner()),
            "y" => params.y = Some(UnitVector::random(config.dim, &mut rng).into_inner()),
            _ => {}
        }
    }
    Ok((matrices, params))
}

fn record_from(check: &str, trial: usize, seed: u64, result: &Result<ChainReport>) -> TrialRecord {
    let mut record = TrialRecord {
        check: check.to_string(),
        trial,
        seed,
        outcome: Outcome::Error,
        margin: None,
        escalations: 0,
        terms: Vec::new(),
        message: None,
    };
    match result {
        Ok(report) => {
            record.outcome = match report.verdict {
                Verdict::Pass => Outcome::Pass,
                Verdict::Violation => Outcome::Violation,
                Verdict::Inconclusive => Outcome::Inconclusive,
            };
            record.margin = Some(report.worst_margin());
            record.escalations = report.escalations;
            record.terms = report.term_values.clone();
        }
        Err(Error::Hypothesis { reason, .. }) => {
            record.outcome = Outcome::HypothesisViolation;
            record.message = Some(reason.clone());
        }
        Err(e) => record.message = Some(e.to_string()),
    }
    record
}

/// Runs every configured check on `trials` seeded inputs.
///
/// Trials are evaluated in parallel and merged by `(check, trial)` order, so
/// the report does not depend on scheduling.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let jobs: Vec<(usize, usize)> = (0..config.checks.len())
        .flat_map(|c| (0..config.trials).map(move |t| (c, t)))
        .collect();
    let results: Vec<(TrialRecord, Option<ViolationWitness>)> = jobs
        .par_iter()
        .map(|&(c, trial)| {
            let check = &config.checks[c];
            let seed = mix_seed(config.seed, trial as u64);
            let (matrices, params) = trial_inputs(config, check, trial)?;
            let result = evaluate_check(check, &matrices, &params, &config.budget);
            let record = record_from(check, trial, seed, &result);
            let witness = match result {
                Ok(report) if report.verdict == Verdict::Violation => Some(ViolationWitness {
                    check: check.clone(),
                    trial,
                    seed,
                    inputs: matrices_to_value(&matrices),
                    params,
                    budget: config.budget,
                    term_labels: report.term_labels,
                    term_values: report.term_values,
                }),
                _ => None,
            };
            Ok((record, witness))
        })
        .collect::<Result<_>>()?;

    let mut summaries: Vec<CheckSummary> = config
        .checks
        .iter()
        .map(|check| CheckSummary {
            check: check.clone(),
            generator: config.generator_for(check),
            trials: config.trials,
            pass: 0,
            violation: 0,
            inconclusive: 0,
            hypothesis_violation: 0,
            errors: 0,
            worst_margin: None,
        })
        .collect();
    let mut rows = Vec::with_capacity(results.len());
    let mut violations = Vec::new();
    for (&(c, _), (record, witness)) in jobs.iter().zip(results) {
        let s = &mut summaries[c];
        match record.outcome {
            Outcome::Pass => s.pass += 1,
            Outcome::Violation => s.violation += 1,
            Outcome::Inconclusive => s.inconclusive += 1,
            Outcome::HypothesisViolation => s.hypothesis_violation += 1,
            Outcome::Error => s.errors += 1,
        }
        if let Some(m) = record.margin {
            s.worst_margin = Some(s.worst_margin.map_or(m, |w: f64| w.min(m)));
        }
        rows.push(record);
        violations.extend(witness);
    }
    Ok(SuiteReport {
        config: config.clone(),
        summaries,
        violations,
        rows,
    })
}

/// Reads violation witnesses from a suite report, a single witness, or a list.
pub fn parse_witnesses(text: &str) -> Result<Vec<ViolationWitness>> {
    let value: Value = serde_json::from_str(text)?;
    let list = match value.get("violations") {
        Some(v) => v.clone(),
        None if value.is_array() => value,
        None => Value::Array(vec![value]),
    };
    Ok(serde_json::from_value(list)?)
}

/// Re-evaluates a recorded witness with its stored parameters and budget.
pub fn replay(witness: &ViolationWitness) -> Result<ChainReport> {
    let no_inputs = witness.inputs.is_null()
        || witness
            .inputs
            .get("matrices")
            .and_then(Value::as_array)
            .is_some_and(Vec::is_empty);
    let matrices = if no_inputs {
        Vec::new()
    } else {
        matrices_from_value(&witness.inputs)?
    };
    evaluate_check(&witness.check, &matrices, &witness.params, &witness.budget)
}
