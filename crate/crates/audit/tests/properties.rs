use proptest::prelude::*;
use wp_audit::record::Values;
use wp_audit::sample::rng_for;
use wp_audit::{parse_json, emit_json, residual, AuditResult, Status, VariantStats};
use wp_products::Complex64;

fn complex() -> impl Strategy<Value = Complex64> {
    (-1e3f64..1e3, -1e3f64..1e3).prop_map(|(a, b)| Complex64::new(a, b))
}

fn values() -> impl Strategy<Value = Values> {
    (2usize..5, 1usize..4).prop_flat_map(|(e, c)| prop::collection::vec(prop::collection::vec(complex(), c), e))
}

fn status() -> impl Strategy<Value = Status> {
    prop_oneof![
        Just(Status::PassAsPrinted),
        "[a-z0-9,-]{1,20}".prop_map(|variant| Status::PassCorrected { variant }),
        (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(re, im)| Status::PassUpToConstant { re, im }),
        Just(Status::Fail),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn residual_is_bounded_and_zero_on_agreement(v in values()) {
        let r = residual(&v);
        prop_assert!((0.0..2.0).contains(&r));
        let same: Values = v.iter().map(|_| v[0].clone()).collect();
        prop_assert_eq!(residual(&same), 0.0);
    }

    #[test]
    fn residual_ignores_the_order_of_the_other_expressions(mut v in values()) {
        let r = residual(&v);
        v[1..].reverse();
        prop_assert_eq!(residual(&v), r);
    }

    #[test]
    fn residual_is_the_worst_component(v in values()) {
        let per: f64 = (0..v[0].len())
            .map(|c| residual(&v.iter().map(|e| vec![e[c]]).collect()))
            .fold(0.0, f64::max);
        prop_assert_eq!(residual(&v), per);
    }

    #[test]
    fn sample_streams_are_reproducible(seed in any::<u64>(), id in "[a-z0-9.-]{1,16}") {
        use rand::RngCore;
        let (mut a, mut b) = (rng_for(seed, &id), rng_for(seed, &id));
        prop_assert_eq!(a.next_u64(), b.next_u64());
    }

    #[test]
    fn results_round_trip_through_json(st in status(), seed in any::<u64>(), m in prop::option::of(0.0f64..1.0)) {
        let r = AuditResult {
            id: "x.y".into(),
            anchor: "a = b".into(),
            seed,
            tolerance: 1e-9,
            n_samples: 3,
            variant: "as-printed".into(),
            status: st,
            variants: vec![VariantStats {
                label: "as-printed".into(),
                n_valid: 3,
                n_errors: 0,
                max_rel_residual: m,
                median_rel_residual: m,
                fitted_constant: Some([1.0, -0.5]),
                constant_dispersion: m,
                constant_residual: None,
            }],
        };
        let json = emit_json(std::slice::from_ref(&r)).unwrap();
        prop_assert_eq!(parse_json(&json).unwrap(), vec![r]);
    }
}
