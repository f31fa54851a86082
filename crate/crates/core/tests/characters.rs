use kummer_core::gav::solve_gav;
use kummer_core::mukai::MukaiVector;
use kummer_core::reptheory::{
    galois_orbits, h4_character, mukai_sum_character, perm_character, GaloisAction, GaloisGroup, GeneratorSpec,
};
use kummer_core::surface::canonical_model;
use num_rational::Rational64;
use proptest::prelude::*;

fn signed_permutation() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (Just([0usize, 1, 2, 3]).prop_shuffle(), proptest::array::uniform4(prop::bool::ANY)).prop_map(|(perm, signs)| {
        (0..4)
            .map(|i| (0..4).map(|j| if perm[i] == j { if signs[i] { -1 } else { 1 } } else { 0 }).collect())
            .collect()
    })
}

fn action() -> impl Strategy<Value = GaloisAction> {
    proptest::collection::vec(signed_permutation(), 1..=2).prop_map(|ms| {
        let gens = ms.into_iter().enumerate().map(|(i, m)| GeneratorSpec::new(&format!("g{i}"), m)).collect();
        GaloisAction::new(3, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dimensions_and_burnside(act in action()) {
        let model = canonical_model(0, 0, 3).unwrap();
        let g = solve_gav(&model, &MukaiVector::new(1, vec![], -3, vec![]).unwrap(), None).unwrap();
        let grp = GaloisGroup::materialize(&act).unwrap();
        prop_assert_eq!(h4_character(&grp, 0, &g).unwrap().at_identity(), Rational64::from(108));
        prop_assert_eq!(mukai_sum_character(&grp, 0, &g).unwrap().at_identity(), Rational64::from(124));
        let chi = perm_character(&grp, 0, &g).unwrap();
        prop_assert!(chi.is_class_function());
        let orbits = galois_orbits(&grp, 0, &g).unwrap();
        prop_assert_eq!(chi.mean(), Rational64::from(orbits.len() as i64));
    }

    #[test]
    fn kernel_product_is_preserved_by_diagonal_actions(d in proptest::array::uniform2(prop::bool::ANY)) {
        // diag(a, b, a, b) commutes with D_l = diag(1, 3, 1, 3) and so preserves ker φ_l × ker φ_m
        let (a, b) = (if d[0] { 1 } else { -1 }, if d[1] { 1 } else { -1 });
        let m = vec![vec![a, 0, 0, 0], vec![0, b, 0, 0], vec![0, 0, a, 0], vec![0, 0, 0, b]];
        let model = canonical_model(1, 3, 3).unwrap();
        let g = solve_gav(&model, &MukaiVector::rank_one(0, 1, 0, 6), None).unwrap();
        let act = GaloisAction::new(3, vec![GeneratorSpec::new("s", m.clone()).with_ahat(m)]).unwrap();
        let grp = GaloisGroup::materialize(&act).unwrap();
        prop_assert_eq!(h4_character(&grp, 0, &g).unwrap().at_identity(), Rational64::from(108));
    }
}
