use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use opr_core::compare::{compare_bounds, parse_bounds, CompareConfig, PairSource};
use opr_core::linalg::op_norm;
use opr_core::matrix_io::parse_matrices;
use opr_core::oracle::{self, DEFAULT_RESOLUTION};
use opr_core::radii::{self, CertifiedValue, Witness};
use opr_core::reference::{reproduce, Reproduction};
use opr_core::registry::{list_checks, Verdict};
use opr_core::suite::{parse_check_list, parse_witnesses, replay, run_suite, Generator, Outcome, SuiteConfig};
use opr_core::{format_sig, ComplexMatrix, OptimizerBudget, ScalarRadiusFunction};

pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

/// An error together with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            error: anyhow!(msg.into()),
        }
    }

    fn input(error: anyhow::Error) -> Self {
        Self {
            code: EXIT_USAGE,
            error,
        }
    }
}

impl From<opr_core::Error> for Failure {
    fn from(e: opr_core::Error) -> Self {
        let code = if e.is_numerical() { EXIT_NUMERICAL } else { EXIT_USAGE };
        Self { code, error: e.into() }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read_matrices(path: &Path) -> Result<Vec<ComplexMatrix>, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)?;
    parse_matrices(&text)
        .with_context(|| format!("invalid matrix file {}", path.display()))
        .map_err(Failure::input)
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("cannot write {}", path.display()))
        .map_err(Failure::input)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Omega,
    NormE,
    OmegaE,
    OmegaQ,
    OmegaF,
    OpNorm,
}

#[derive(Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    what: Quantity,
    /// Matrix file: {"dim", "data"} or {"matrices": [...]}.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Exponent for omega-q.
    #[arg(long)]
    q: Option<f64>,
    /// Scalar function for omega-f, e.g. pow:1.5.
    #[arg(long)]
    f: Option<String>,
    /// Phase grid size.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    restarts: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Also evaluate the dense-grid oracle (dimension 2 only for vector sups).
    #[arg(long)]
    oracle: bool,
    #[arg(long)]
    json: bool,
}

fn single(ms: &[ComplexMatrix], what: &str) -> Result<ComplexMatrix, Failure> {
    match ms {
        [t] => Ok(t.clone()),
        _ => Err(Failure::usage(format!(
            "{what} takes a single matrix, the file holds {}",
            ms.len()
        ))),
    }
}

fn function_for(args: &ComputeArgs) -> Result<ScalarRadiusFunction, Failure> {
    Ok(match args.what {
        Quantity::OmegaE => ScalarRadiusFunction::power(2.0)?,
        Quantity::OmegaQ => {
            let q = args.q.ok_or_else(|| Failure::usage("omega-q requires --q"))?;
            ScalarRadiusFunction::power(q)?
        }
        _ => {
            let f = args
                .f
                .as_deref()
                .ok_or_else(|| Failure::usage("omega-f requires --f (e.g. pow:2)"))?;
            f.parse()?
        }
    })
}

fn witness_json(w: &Witness) -> Value {
    serde_json::to_value(w).expect("witness serialization")
}

fn witness_text(w: &Witness) -> String {
    let complex = |z: &opr_core::Complex64| format!("({}, {})", format_sig(z.re), format_sig(z.im));
    match w {
        Witness::Vector(x) => format!(
            "x = [{}]",
            x.as_slice().iter().map(complex).collect::<Vec<_>>().join(", ")
        ),
        Witness::Coefficients(c) => format!("lambda = [{}]", c.iter().map(complex).collect::<Vec<_>>().join(", ")),
        Witness::Phase(theta) => format!("theta = {}", format_sig(*theta)),
    }
}

pub fn compute(args: ComputeArgs) -> CmdResult {
    let ms = read_matrices(&args.input)?;
    let defaults = OptimizerBudget::default();
    let budget = OptimizerBudget {
        grid_points: args.grid.unwrap_or(defaults.grid_points),
        restarts: args.restarts.unwrap_or(defaults.restarts),
        seed: args.seed.unwrap_or(defaults.seed),
        ..defaults
    };
    budget.validate()?;
    let name = args
        .what
        .to_possible_value()
        .expect("named variant")
        .get_name()
        .to_string();

    let (c, oracle_value): (CertifiedValue, Option<f64>) = match args.what {
        Quantity::OpNorm => {
            let t = single(&ms, &name)?;
            let v = op_norm(&t)?;
            let oracle_value = if args.oracle { Some(v) } else { None };
            let out = json!({ "what": name, "value": v, "oracle": oracle_value });
            if args.json {
                println!("{}", serde_json::to_string_pretty(&out).expect("json"));
            } else {
                println!("value: {}", format_sig(v));
            }
            return Ok(ExitCode::SUCCESS);
        }
        Quantity::Omega => {
            let t = single(&ms, &name)?;
            let oracle_value = match args.oracle {
                true => Some(oracle::grid_numerical_range_sup(&t, DEFAULT_RESOLUTION)?),
                false => None,
            };
            (radii::numerical_radius(&t, &budget)?, oracle_value)
        }
        Quantity::NormE => {
            let oracle_value = match (args.oracle, ms.as_slice()) {
                (false, _) => None,
                (true, [t1, t2]) => Some(oracle::grid_euclidean_norm_pair(t1, t2, DEFAULT_RESOLUTION)?),
                (true, [t]) => Some(op_norm(t)?),
                (true, _) => return Err(Failure::usage("the norm-e oracle handles at most two matrices")),
            };
            (radii::euclidean_norm(&ms, &budget)?, oracle_value)
        }
        Quantity::OmegaE | Quantity::OmegaQ | Quantity::OmegaF => {
            let f = function_for(&args)?;
            let oracle_value = match args.oracle {
                true => {
                    let search = oracle::grid_omega_f_search(&ms, &f, DEFAULT_RESOLUTION)?;
                    Some(f.inverse(search.objective.max(0.0))?)
                }
                false => None,
            };
            (radii::omega_f(&ms, &f, &budget)?, oracle_value)
        }
    };
    if args.json {
        let out = json!({
            "what": name,
            "value": c.value,
            "upper_certificate": c.upper_certificate,
            "witness": witness_json(&c.lower_witness),
            "restarts_used": c.restarts_used,
            "iterations_used": c.iterations_used,
            "converged": c.converged,
            "oracle": oracle_value,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
    } else {
        println!("value: {}", format_sig(c.value));
        if let Some(u) = c.upper_certificate {
            println!("certified range: [{}, {}]", format_sig(c.value), format_sig(u));
        }
        println!("witness: {}", witness_text(&c.lower_witness));
        if let Some(o) = oracle_value {
            println!("oracle: {}", format_sig(o));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Args)]
pub struct VerifyArgs {
    /// `all` or a comma-separated list of check names.
    #[arg(long, required_unless_present = "replay")]
    suite: Option<String>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// ginibre, integer, accdiss or nilpotent2.
    #[arg(long, default_value = "ginibre")]
    gen: String,
    /// Generator for a single check, as CHECK=GEN (repeatable).
    #[arg(long = "gen-for", value_name = "CHECK=GEN")]
    gen_for: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    f: Option<String>,
    /// Directory for report.csv and report.json.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Re-run the violation witnesses recorded in a report.
    #[arg(long, value_name = "FILE", conflicts_with = "suite")]
    replay: Option<PathBuf>,
}

fn replay_file(path: &Path) -> CmdResult {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::input)?;
    let witnesses = parse_witnesses(&text)?;
    let mut still_failing = 0;
    for w in &witnesses {
        let report = replay(w)?;
        if report.verdict == Verdict::Violation {
            still_failing += 1;
        }
        let terms: Vec<String> = report.term_values.iter().map(|&v| format_sig(v)).collect();
        println!(
            "{} trial {}: {:?} [{}]",
            w.check,
            w.trial,
            report.verdict,
            terms.join(", ")
        );
    }
    println!(
        "{} witnesses replayed, {} still violate",
        witnesses.len(),
        still_failing
    );
    Ok(ExitCode::from(suite_exit_code(still_failing, 0)))
}

/// Violations take precedence over numerical errors.
fn suite_exit_code(violations: usize, errors: usize) -> u8 {
    if violations > 0 {
        EXIT_FAILED
    } else if errors > 0 {
        EXIT_NUMERICAL
    } else {
        0
    }
}

fn reproduction_exit_code(rows: &[Reproduction]) -> u8 {
    if rows.iter().all(Reproduction::within_tolerance) {
        0
    } else {
        EXIT_FAILED
    }
}

pub fn verify(args: VerifyArgs) -> CmdResult {
    if let Some(path) = &args.replay {
        return replay_file(path);
    }
    let checks = parse_check_list(args.suite.as_deref().expect("clap enforces --suite"))?;
    let mut config = SuiteConfig::new(checks, args.trials, args.dim, args.gen.parse()?, args.seed);
    for entry in &args.gen_for {
        let (check, gen) = entry
            .split_once('=')
            .ok_or_else(|| Failure::usage(format!("--gen-for expects CHECK=GEN, got `{entry}`")))?;
        config
            .generator_overrides
            .insert(check.trim().to_string(), gen.trim().parse::<Generator>()?);
    }
    if let Some(f) = &args.f {
        f.parse::<ScalarRadiusFunction>()?;
    }
    config.alpha = args.alpha;
    config.lambda = args.lambda;
    config.f = args.f.clone();
    let report = run_suite(&config)?;

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)
            .with_context(|| format!("cannot create {}", dir.display()))
            .map_err(Failure::input)?;
        let mut csv = Vec::new();
        report.write_csv(&mut csv)?;
        write_file(&dir.join("report.csv"), &csv)?;
        write_file(&dir.join("report.json"), report.to_json().as_bytes())?;
    }

    println!(
        "{:<20} {:<10} {:>6} {:>6} {:>6} {:>6} {:>6}  worst margin",
        "check", "gen", "pass", "viol", "inconc", "hyp", "err"
    );
    for s in &report.summaries {
        println!(
            "{:<20} {:<10} {:>6} {:>6} {:>6} {:>6} {:>6}  {}",
            s.check,
            s.generator.name(),
            s.pass,
            s.violation,
            s.inconclusive,
            s.hypothesis_violation,
            s.errors,
            s.worst_margin.map(format_sig).unwrap_or_else(|| "-".into())
        );
    }
    println!(
        "{} violations, {} inconclusive, {} hypothesis rejections, {} errors",
        report.violation_count(),
        report.inconclusive_count(),
        report.hypothesis_count(),
        report.error_count()
    );
    if report.hypothesis_count() > 0 {
        eprintln!("warning: some inputs did not satisfy a check's hypotheses; those trials were skipped");
    }
    if report.violation_count() > 0 && args.out.is_some() {
        eprintln!("violation witnesses written to report.json; rerun with --replay");
    }
    for row in report.rows.iter().filter(|r| r.outcome == Outcome::Error) {
        eprintln!(
            "{} trial {}: {}",
            row.check,
            row.trial,
            row.message.as_deref().unwrap_or("")
        );
    }
    Ok(ExitCode::from(suite_exit_code(
        report.violation_count(),
        report.error_count(),
    )))
}

pub fn reproduce_paper(as_json: bool) -> CmdResult {
    let rows = reproduce(&OptimizerBudget::default())?;
    let failing: Vec<_> = rows.iter().filter(|r| !r.within_tolerance()).collect();
    if as_json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("json"));
    } else {
        for r in &rows {
            println!(
                "{}: {} vs {} (deviation {})",
                r.label,
                format_sig(r.computed),
                format_sig(r.expected),
                format_sig(r.deviation)
            );
        }
    }
    for r in failing {
        eprintln!("out of tolerance: {}", r.label);
    }
    Ok(ExitCode::from(reproduction_exit_code(&rows)))
}

#[derive(Args)]
pub struct CompareArgs {
    /// Comma-separated bound names (or the check names they come from).
    #[arg(long)]
    bounds: String,
    /// ginibre, integer, accdiss, nilpotent2, or paper for the embedded examples.
    #[arg(long, default_value = "ginibre")]
    gen: String,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

pub fn compare(args: CompareArgs) -> CmdResult {
    let config = CompareConfig {
        bounds: parse_bounds(&args.bounds)?,
        source: args.gen.parse::<PairSource>()?,
        trials: args.trials,
        dim: args.dim,
        seed: args.seed,
        budget: OptimizerBudget::default(),
    };
    if args.dim == 0 {
        return Err(Failure::usage("--dim must be positive"));
    }
    let table = compare_bounds(&config)?;
    let mut csv = Vec::new();
    table.write_csv(&mut csv)?;
    match &args.out {
        Some(path) => write_file(path, &csv)?,
        None => print!("{}", String::from_utf8(csv).expect("utf-8 csv")),
    }
    println!("{}", table.summary_line());
    Ok(ExitCode::SUCCESS)
}

pub fn list() -> CmdResult {
    for c in list_checks() {
        let params: Vec<_> = c
            .parameters
            .iter()
            .map(|p| format!("{} in {}", p.name, p.range))
            .collect();
        println!("{:<20} {:<45} {}", c.name, c.arity.describe(), c.statement);
        if !params.is_empty() {
            println!("{:<20} parameters: {}", "", params.join("; "));
        }
        if !c.hypotheses.is_empty() {
            println!("{:<20} hypotheses: {}", "", c.hypotheses.join("; "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_exit_codes() {
        assert_eq!(suite_exit_code(0, 0), 0);
        assert_eq!(suite_exit_code(3, 0), EXIT_FAILED);
        assert_eq!(suite_exit_code(0, 2), EXIT_NUMERICAL);
        assert_eq!(suite_exit_code(1, 1), EXIT_FAILED);
    }

    #[test]
    fn reproduction_out_of_tolerance_fails() {
        let mut rows = reproduce(&OptimizerBudget::default()).unwrap();
        assert_eq!(reproduction_exit_code(&rows), 0);
        rows[4].computed += 0.01;
        rows[4].deviation = (rows[4].computed - rows[4].expected).abs();
        assert_eq!(reproduction_exit_code(&rows), EXIT_FAILED);
    }
}
