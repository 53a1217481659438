use super::*;
use crate::reference::BLOCK_BOUND_PAIRS;
use rand_chacha::ChaCha8Rng;

fn budget() -> OptimizerBudget {
    OptimizerBudget::default()
}

fn run(name: &str, ms: &[ComplexMatrix], params: &CheckParams) -> ChainReport {
    evaluate_check(name, ms, params, &budget()).unwrap()
}

fn terms_of(values: &[f64], sup: bool) -> Vec<Term> {
    values
        .iter()
        .map(|&v| Term {
            label: String::new(),
            value: v,
            sup,
        })
        .collect()
}

#[test]
fn registry_is_complete_and_stable() {
    let checks = list_checks();
    assert_eq!(checks.len(), 31);
    let mut names: Vec<_> = checks.iter().map(|c| c.name).collect();
    assert_eq!(names[0], "equiv-intro");
    assert_eq!(names[30], "lambda-sphere-max");
    names.sort();
    names.dedup();
    assert_eq!(names.len(), 31);
    assert!(find_check("thm0-upper").is_ok());
    assert_eq!(find_check("hirz-equality").unwrap().kind, CheckKind::Equality);
    let thm = find_check("thm2.2-chain").unwrap();
    let params: Vec<_> = thm.parameters.iter().map(|p| p.name).collect();
    assert_eq!(params, ["alpha", "lambda", "f"]);
    let equalities: Vec<_> = checks
        .iter()
        .filter(|c| c.kind == CheckKind::Equality)
        .map(|c| c.name)
        .collect();
    assert_eq!(
        equalities,
        ["hirz-equality", "parallelogram-e", "tt-identity", "lambda-sphere-max"]
    );
}

#[test]
fn new_block_example() {
    let (t1, t2) = BLOCK_BOUND_PAIRS[0].matrices();
    let r = run("cor-newblock", &[t1, t2], &CheckParams::default());
    assert_eq!(r.verdict, Verdict::Pass);
    assert!((r.term_values[0] - 7.01793).abs() < 5e-5, "{r:?}");
    assert!((r.term_values[1] - 7.04011).abs() < 5e-5, "{r:?}");
}

#[test]
fn kittaneh_nilpotent() {
    let n = ComplexMatrix::from_real_rows([[0., 1.], [0., 0.]]);
    let r = run("kittaneh-2", &[n], &CheckParams::default());
    assert_eq!(r.verdict, Verdict::Pass);
    for (got, want) in r.term_values.iter().zip([0.25, 0.25, 0.5]) {
        assert!((got - want).abs() < 1e-9);
    }
    assert!(r.margins[0].abs() < 1e-9);
    assert_eq!(r.margins.len(), r.term_values.len() - 1);
}

#[test]
fn tt_identity_is_tight() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let t = ComplexMatrix::ginibre(3, &mut rng);
    let r = run("tt-identity", &[t], &CheckParams::default());
    assert_eq!(r.verdict, Verdict::Pass);
    assert!(r.margins[0].abs() < 1e-8);
}

#[test]
fn every_check_passes_on_a_random_input() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for desc in list_checks() {
        let ms: Vec<ComplexMatrix> = match desc.arity {
            Arity::None => vec![],
            Arity::Single => vec![ComplexMatrix::ginibre(2, &mut rng)],
            Arity::Pair | Arity::PairedTuple => (0..2).map(|_| ComplexMatrix::ginibre(2, &mut rng)).collect(),
            Arity::Tuple => (0..3).map(|_| ComplexMatrix::ginibre(2, &mut rng)).collect(),
        };
        let ms = if desc.name == "accdiss-chain" {
            let (g, h) = (&ms[0], ComplexMatrix::ginibre(2, &mut rng));
            vec![&(&g.adjoint() * g) + &(&h.adjoint() * &h).scale_complex(crate::linalg::I)]
        } else {
            ms
        };
        let r = evaluate_check(desc.name, &ms, &CheckParams::default(), &budget()).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert_eq!(r.term_labels.len(), r.term_values.len());
    }
}

#[test]
fn input_errors() {
    let t = ComplexMatrix::identity(2);
    let p = CheckParams::default();
    assert!(matches!(
        evaluate_check("no-such", std::slice::from_ref(&t), &p, &budget()),
        Err(Error::UnknownCheck(_))
    ));
    assert!(matches!(
        evaluate_check("thm0-upper", std::slice::from_ref(&t), &p, &budget()),
        Err(Error::Arity { found: 1, .. })
    ));
    assert!(matches!(
        evaluate_check("thm-squared-chain", &[t.clone(), t.clone(), t.clone()], &p, &budget()),
        Err(Error::Arity { .. })
    ));
    assert!(matches!(
        evaluate_check("thm0-upper", &[t.clone(), ComplexMatrix::identity(3)], &p, &budget()),
        Err(Error::DimensionMismatch { .. })
    ));
    let bad_alpha = CheckParams {
        alpha: Some(1.5),
        ..Default::default()
    };
    assert!(matches!(
        evaluate_check("thm2.2-chain", &[t], &bad_alpha, &budget()),
        Err(Error::InvalidParameter { .. })
    ));
}

#[test]
fn hypotheses_are_refused() {
    let t = ComplexMatrix::from_real_rows([[1., 2.], [0., -1.]]);
    assert!(matches!(
        evaluate_check(
            "accdiss-chain",
            std::slice::from_ref(&t),
            &CheckParams::default(),
            &budget()
        ),
        Err(Error::Hypothesis { .. })
    ));
    let cubic = CheckParams {
        f: Some("pow:3".into()),
        ..Default::default()
    };
    for name in ["thm2.2-chain", "cor2.2-chain", "eq2.6-chain"] {
        assert!(matches!(
            evaluate_check(name, std::slice::from_ref(&t), &cubic, &budget()),
            Err(Error::Hypothesis { .. })
        ));
    }
    assert!(matches!(
        evaluate_check("thm-squared-chain", &[t.clone(), t.clone()], &cubic, &budget()),
        Err(Error::Hypothesis { .. })
    ));
    let p3 = CheckParams {
        p: Some(3.0),
        ..Default::default()
    };
    assert!(matches!(
        evaluate_check("cor2.3-chain", &[t], &p3, &budget()),
        Err(Error::Hypothesis { .. })
    ));
}

#[test]
fn mixed_schwarz_extreme_weights() {
    let n = ComplexMatrix::from_real_rows([[0., 1.], [0., 0.]]);
    let x = vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)];
    let y = vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    for alpha in [0.0, 0.5, 1.0] {
        let params = CheckParams {
            alpha: Some(alpha),
            x: Some(x.clone()),
            y: Some(y.clone()),
            ..Default::default()
        };
        let r = run("mixed-schwarz", std::slice::from_ref(&n), &params);
        // ⟨Nx, y⟩ = x₂ conj(y₁), and the bound is attained for these vectors.
        assert!((r.term_values[0] - 0.64).abs() < 1e-12);
        assert!((r.term_values[1] - 0.64).abs() < 1e-12, "{alpha}: {r:?}");
        assert_eq!(r.verdict, Verdict::Pass);
    }
}

#[test]
fn verdict_policy() {
    let eps = chain_tolerance(&[1.0, 1.0]);
    assert!((eps - (2e-7 + 1e-9)).abs() < 1e-20);
    let small = terms_of(&[1.0 + 5.0 * eps, 1.0], false);
    assert_eq!(deficits(CheckKind::InequalityChain, &small, eps).len(), 1);
    assert!(deficits(
        CheckKind::InequalityChain,
        &terms_of(&[1.0 + 0.5 * eps, 1.0], false),
        eps
    )
    .is_empty());
    assert!(deficits(CheckKind::Equality, &terms_of(&[1.0, 1.0 - 0.5 * eps], false), eps).is_empty());
    assert_eq!(
        deficits(CheckKind::Equality, &terms_of(&[1.0, 1.0 - 2.0 * eps], false), eps).len(),
        1
    );
    assert!(escalatable(CheckKind::InequalityChain, &terms_of(&[1.0, 0.0], true), 0));
    assert!(!escalatable(
        CheckKind::InequalityChain,
        &terms_of(&[1.0, 0.0], false),
        0
    ));
}

#[test]
fn params_round_trip_json() {
    let params = CheckParams {
        alpha: Some(0.25),
        f: Some("pow:1.5".into()),
        x: Some(vec![Complex64::new(1.0, -2.0)]),
        ..Default::default()
    };
    let text = serde_json::to_string(&params).unwrap();
    assert!(!text.contains("lambda"));
    assert_eq!(serde_json::from_str::<CheckParams>(&text).unwrap(), params);
}
