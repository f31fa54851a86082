use kummer_core::gav::{
    brute_force_gav, expected_invariant_factors, psi_check, rouquier_check, solve_gav, verify_structure,
};
use kummer_core::mukai::{predicates, shift, MukaiVector};
use kummer_core::surface::{canonical_model, validate_model};
use kummer_core::Exec;
use proptest::prelude::*;

const TYPES: [(i64, i64); 7] = [(1, 1), (1, 2), (1, 3), (2, 2), (1, 4), (1, 5), (1, 6)];

/// Primitive positive rank-one vectors with `3 <= n <= 20` on one of `TYPES`.
fn primitive_point() -> impl Strategy<Value = (i64, i64, MukaiVector, i64)> {
    (0..TYPES.len(), 0i64..=8, -8i64..=8).prop_filter_map("primitive, positive, 3 <= n <= 20", |(t, r, s)| {
        let (n1, n2) = TYPES[t];
        let v = MukaiVector::rank_one(r, n1, s, 2 * n2 / n1);
        let n = n1 * n2 - r * s;
        let p = predicates(&v);
        (p.positive && p.primitive && (3..=20).contains(&n)).then_some((n1, n2, v, n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn structure_holds_at_multiples_of_n((n1, n2, v, n) in primitive_point(), k in 1u64..=3) {
        let model = canonical_model(n1, n2, k * n as u64).unwrap();
        let g = solve_gav(&model, &v, None).unwrap();
        prop_assert_eq!(g.invariant_factors(), &[n as u64; 4][..]);
        prop_assert!(verify_structure(&g, n, 1).passed());
        prop_assert!(psi_check(&model, &v).passed());
        prop_assert!(rouquier_check(&model, &v).unwrap().ok);
    }

    #[test]
    fn shift_invariance((n1, n2, v, n) in primitive_point()) {
        let model = canonical_model(n1, n2, n as u64).unwrap();
        let g = solve_gav(&model, &v, None).unwrap();
        let h = solve_gav(&model.negated(), &shift(&v), None).unwrap();
        prop_assert_eq!(g.element_set(), h.element_set());
    }

    #[test]
    fn imprimitive_degree_zero(r in 1i64..=4, s in -4i64..=-1, d in 2i64..=3) {
        prop_assume!(num_integer::gcd(r, s) == 1 && d * d * r * s.abs() <= 200);
        let v = MukaiVector::new(d * r, vec![], d * s, vec![]).unwrap();
        let n = -r * s;
        let model = canonical_model(0, 0, (d * n) as u64).unwrap();
        let g = solve_gav(&model, &v, None).unwrap();
        prop_assert_eq!(g.invariant_factors().to_vec(), expected_invariant_factors(n, d));
        prop_assert!(verify_structure(&g, n, d).passed());
    }
}

#[test]
fn oracle_on_small_levels() {
    // points at levels 3..=5 outside the main acceptance ranges
    for (n1, n2, r, s) in [(1, 5, 1, 2), (1, 6, 1, 3), (1, 2, 3, 0), (1, 1, -1, 3)] {
        let v = MukaiVector::rank_one(r, n1, s, 2 * n2 / n1);
        let n = (n1 * n2 - r * s) as u64;
        let model = canonical_model(n1, n2, n).unwrap();
        let g = solve_gav(&model, &v, None).unwrap();
        let b = brute_force_gav(&model, &v, None, n, Exec::Parallel).unwrap();
        assert_eq!(g.element_set(), b.element_set(), "({n1},{n2}) r={r} s={s}");
    }
}

#[test]
fn canonical_models_validate() {
    for (n1, n2) in TYPES {
        for k in 1..=3 {
            let m = canonical_model(n1, n2, (k * n2).max(2) as u64).unwrap();
            let r = validate_model(&m);
            assert!(r.passed(), "({n1},{n2}) at {}: {:?}", m.level(), r.failures().collect::<Vec<_>>());
        }
    }
}
