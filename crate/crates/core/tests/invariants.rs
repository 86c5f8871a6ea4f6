use num_integer::Integer;
use proptest::prelude::*;
use sqdiff::arcs::{dirichlet_approx, gauss_magnitude_expected, gauss_sum, nearest_fraction};
use sqdiff::report::{EstimateReport, VerificationReport};
use sqdiff::sets::{
    count_square_differences_autocorr, count_square_differences_direct, is_square_difference_free,
    IndicatorSet,
};
use sqdiff::solver::greedy_square;

fn set_strategy() -> impl Strategy<Value = IndicatorSet> {
    (1u64..600).prop_flat_map(|n| {
        proptest::collection::btree_set(1..=n, 0..(n as usize).min(200))
            .prop_map(move |xs| IndicatorSet::from_members(n, xs).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn compact_and_json_round_trip(s in set_strategy()) {
        prop_assert_eq!(IndicatorSet::from_compact(&s.to_compact()).unwrap(), s.clone());
        prop_assert_eq!(IndicatorSet::parse(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn direct_count_equals_autocorrelation(s in set_strategy()) {
        prop_assert_eq!(
            count_square_differences_direct(&s),
            count_square_differences_autocorr(&s).unwrap()
        );
    }

    #[test]
    fn free_iff_zero_count(s in set_strategy()) {
        prop_assert_eq!(is_square_difference_free(&s), count_square_differences_direct(&s).0 == 0);
    }

    #[test]
    fn dirichlet_invariants(alpha in 0.0f64..1.0, qmax in 1u64..5000) {
        let r = dirichlet_approx(alpha, qmax).unwrap();
        prop_assert!(r.q >= 1 && r.q <= qmax);
        prop_assert_eq!(r.a.unsigned_abs().gcd(&r.q), 1);
        prop_assert!((alpha - r.a as f64 / r.q as f64).abs() <= 1.0 / (r.q as f64 * qmax as f64));
    }

    #[test]
    fn nearest_fraction_is_no_worse_than_dirichlet(alpha in 0.0f64..1.0, m in 1u64..2000) {
        let near = nearest_fraction(alpha, m);
        let dir = dirichlet_approx(alpha, m).unwrap();
        prop_assert!(near.q <= m);
        prop_assert!(
            (alpha - near.a as f64 / near.q as f64).abs()
                <= (alpha - dir.a as f64 / dir.q as f64).abs() + 1e-15
        );
    }

    #[test]
    fn gauss_conjugation_and_magnitude(q in 1u64..400, a in -2000i64..2000) {
        prop_assume!((a.unsigned_abs()).gcd(&q) == 1);
        let s = gauss_sum(a, q).unwrap();
        let t = gauss_sum(-a, q).unwrap();
        prop_assert!((s.conj() - t).norm() <= 1e-9 * (q as f64).sqrt());
        prop_assert!((s.norm() - gauss_magnitude_expected(q)).abs() <= 1e-8 * (q as f64).sqrt());
        // periodic in a
        let u = gauss_sum(a + q as i64, q).unwrap();
        prop_assert!((s - u).norm() <= 1e-9 * (q as f64).sqrt());
    }

    #[test]
    fn greedy_meets_guarantee(n in 1u64..20_000) {
        let a = greedy_square(n).unwrap();
        prop_assert!(is_square_difference_free(&a));
        prop_assert!(a.len() as f64 >= (n as f64 - 1.0) / ((n as f64).sqrt().floor() + 1.0));
    }

    #[test]
    fn report_round_trip(measured in 0.0f64..1e9, bound in 0.0f64..1e9, lower: bool, seed: u64) {
        let mut report = VerificationReport::new("roundtrip", seed, serde_json::json!({ "k": 1 }));
        let row = if lower {
            EstimateReport::at_least(Some(0.25), measured, bound)
        } else {
            EstimateReport::new(None, measured, bound)
        };
        report.push("row", true, row);
        report.observe_constant(measured);
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
    }
}
