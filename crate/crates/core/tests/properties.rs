use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use scroll_core::classify::{TABLE1, TABLE2};
use scroll_core::singular::{surface_intersection, toric_surface_intersection};
use scroll_core::sections::{exponents_to_point, point_to_exponents};
use scroll_core::{divisor_polytope, section_space, DivisorClass, ScrollSpec};

fn corpus() -> Vec<ScrollSpec> {
    TABLE1.iter().chain(TABLE2.iter()).map(|r| r.spec()).collect()
}

fn corpus_spec() -> impl Strategy<Value = ScrollSpec> {
    let specs = corpus();
    (0..specs.len()).prop_map(move |i| specs[i].clone())
}

fn weighted_spec() -> impl Strategy<Value = ScrollSpec> {
    (proptest::collection::vec(-4i64..5, 4), proptest::collection::vec(1i64..4, 3))
        .prop_map(|(twists, mut weights)| {
            weights.insert(0, 1);
            ScrollSpec::new(twists, weights).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(11), ..ProptestConfig::default() })]

    #[test]
    fn lattice_points_are_the_section_monomials(spec in corpus_spec(), l in -6i64..5, m in 0i64..5) {
        let class = DivisorClass::new(l, m);
        let space = section_space(&spec, class);
        let points = divisor_polytope(&spec, class).unwrap().lattice_points().unwrap();
        prop_assert_eq!(points.len(), space.dim());
        let mut from_points: Vec<Vec<i64>> = points.iter().map(|u| point_to_exponents(&spec, class, u)).collect();
        let mut basis: Vec<Vec<i64>> =
            space.basis_exponents().into_iter().map(|e| e.into_iter().map(i64::from).collect()).collect();
        from_points.sort();
        basis.sort();
        prop_assert_eq!(&from_points, &basis);
        for (u, e) in points.iter().zip(points.iter().map(|u| point_to_exponents(&spec, class, u))) {
            prop_assert_eq!(&exponents_to_point(&e), u);
        }
    }

    #[test]
    fn normalize_is_constant_on_orbits(spec in weighted_spec(), k in -6i64..7, seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..4).collect();
        let mut s = seed;
        for i in (1..4).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= 7;
        }
        let norm = spec.normalize();
        prop_assert!(norm.is_normalized());
        prop_assert_eq!(norm.normalize(), norm.clone());
        prop_assert_eq!(spec.shifted_permuted(k, &perm).normalize(), norm);
    }

    #[test]
    fn coordinate_classes_sum_to_anticanonical(spec in weighted_spec()) {
        let sum = spec.coordinate_classes().into_iter().fold(DivisorClass::new(0, 0), |a, b| a + b);
        prop_assert_eq!(sum, spec.anticanonical());
        let twists: i64 = spec.twists().iter().sum();
        let weights: i64 = spec.weights().iter().sum();
        prop_assert_eq!(spec.anticanonical(), DivisorClass::new(2 - twists, weights));
    }

    #[test]
    fn toric_intersection_matches_closed_form(
        au in -3i64..4, av in -3i64..4, bu in 1i64..4, bv in 1i64..4,
        l1 in -3i64..4, m1 in -3i64..6, l2 in -3i64..4, m2 in -3i64..6,
    ) {
        let (c1, c2) = (DivisorClass::new(l1, m1), DivisorClass::new(l2, m2));
        let toric = toric_surface_intersection(au, av, bu, bv, c1, c2);
        prop_assume!(toric.is_ok());
        prop_assert_eq!(toric.unwrap(), surface_intersection(au, av, bu, bv, c1, c2));
    }
}

#[test]
fn corpus_specs_are_normalized() {
    for s in corpus() {
        assert!(s.is_normalized(), "{}", s.paper_notation());
    }
}
