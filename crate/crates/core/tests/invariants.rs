use opr_core::radii::{euclidean_norm, euclidean_norm_at, numerical_radius, numerical_radius_at, omega_f, omega_f_at};
use opr_core::registry::{evaluate_check, CheckParams, Verdict};
use opr_core::{Complex64, ComplexMatrix, OptimizerBudget, ScalarRadiusFunction};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tuple(seed: u64, dim: usize, n: usize) -> Vec<ComplexMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| ComplexMatrix::ginibre(dim, &mut rng)).collect()
}

fn unitary(seed: u64, dim: usize) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xA5A5);
    ComplexMatrix::random_unitary(dim, &mut rng)
}

fn conjugate(u: &ComplexMatrix, t: &ComplexMatrix) -> ComplexMatrix {
    &(&u.adjoint() * t) * u
}

fn close(a: f64, b: f64, scale: f64) -> bool {
    (a - b).abs() <= 1e-6 * (1.0 + scale)
}

fn budget() -> OptimizerBudget {
    OptimizerBudget::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn omega_scale_and_unitary_invariance(seed in any::<u64>(), dim in 2usize..=4, c in -3.0f64..3.0, phase in 0.0f64..std::f64::consts::TAU) {
        let t = &tuple(seed, dim, 1)[0];
        let b = budget();
        let w = numerical_radius(t, &b).unwrap().value;
        let z = Complex64::from_polar(c, phase);
        let scaled = numerical_radius(&t.scale_complex(z), &b).unwrap().value;
        prop_assert!(close(scaled, z.norm() * w, z.norm() * w), "{scaled} vs {}", z.norm() * w);
        let u = unitary(seed, dim);
        let rotated = numerical_radius(&conjugate(&u, t), &b).unwrap().value;
        prop_assert!(close(rotated, w, w));
        let adj = numerical_radius(&t.adjoint(), &b).unwrap().value;
        prop_assert!(close(adj, w, w));
    }

    #[test]
    fn euclidean_norm_invariances(seed in any::<u64>(), dim in 2usize..=3, n in 1usize..=3, c in 0.1f64..3.0) {
        let ts = tuple(seed, dim, n);
        let b = budget();
        let base = euclidean_norm(&ts, &b).unwrap().value;

        let scaled: Vec<_> = ts.iter().map(|t| t.scale(c)).collect();
        prop_assert!(close(euclidean_norm(&scaled, &b).unwrap().value, c * base, c * base));

        let u = unitary(seed, dim);
        let rotated: Vec<_> = ts.iter().map(|t| conjugate(&u, t)).collect();
        prop_assert!(close(euclidean_norm(&rotated, &b).unwrap().value, base, base));

        let adjoints: Vec<_> = ts.iter().map(ComplexMatrix::adjoint).collect();
        prop_assert!(close(euclidean_norm(&adjoints, &b).unwrap().value, base, base));

        let mut reversed = ts.clone();
        reversed.reverse();
        prop_assert!(close(euclidean_norm(&reversed, &b).unwrap().value, base, base));
    }

    #[test]
    fn omega_f_invariances(seed in any::<u64>(), n in 1usize..=3, q in 1.0f64..3.0, c in 0.1f64..3.0) {
        let ts = tuple(seed, 2, n);
        let f = ScalarRadiusFunction::power(q).unwrap();
        let b = budget();
        let base = omega_f(&ts, &f, &b).unwrap().value;

        // ω_f with f = t^q is positively homogeneous.
        let scaled: Vec<_> = ts.iter().map(|t| t.scale(c)).collect();
        prop_assert!(close(omega_f(&scaled, &f, &b).unwrap().value, c * base, c * base));

        let u = unitary(seed, 2);
        let rotated: Vec<_> = ts.iter().map(|t| conjugate(&u, t)).collect();
        prop_assert!(close(omega_f(&rotated, &f, &b).unwrap().value, base, base));

        let mut reversed = ts.clone();
        reversed.reverse();
        prop_assert!(close(omega_f(&reversed, &f, &b).unwrap().value, base, base));
    }

    #[test]
    fn witnesses_reproduce_values(seed in any::<u64>(), dim in 2usize..=4) {
        let ts = tuple(seed, dim, 2);
        let b = budget();
        let f = ScalarRadiusFunction::power(2.0).unwrap();

        let w = numerical_radius(&ts[0], &b).unwrap();
        let at = numerical_radius_at(&ts[0], &w.lower_witness).unwrap();
        prop_assert!(close(at, w.value, w.value));
        prop_assert!(w.value <= w.upper_certificate.unwrap() + 1e-12);

        let e = euclidean_norm(&ts, &b).unwrap();
        let at = euclidean_norm_at(&ts, &e.lower_witness).unwrap();
        prop_assert!(close(at, e.value, e.value));
        prop_assert!(e.value <= e.upper_certificate.unwrap() + 1e-12);

        let o = omega_f(&ts, &f, &b).unwrap();
        let at = omega_f_at(&ts, &f, &o.lower_witness).unwrap();
        prop_assert!(close(at, o.value, o.value));
        if let Some(upper) = o.upper_certificate {
            prop_assert!(o.value <= upper + 1e-12);
        }
    }

    #[test]
    fn interpolation_chain_holds_across_parameters(seed in any::<u64>(), n in 1usize..=3, alpha in 0.0f64..=1.0, lambda in 0.0f64..=1.0, f in prop::sample::select(vec!["pow:1", "pow:1.5", "pow:2"])) {
        let ts = tuple(seed, 2, n);
        let params = CheckParams {
            alpha: Some(alpha),
            lambda: Some(lambda),
            f: Some(f.to_string()),
            ..CheckParams::default()
        };
        let report = evaluate_check("thm2.2-chain", &ts, &params, &budget()).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Pass, "{:?}", report);
    }
}
