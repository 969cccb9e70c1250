use bazaikin::numeric::zero_plane::column_weights;
use bazaikin::numeric::{
    find_zero_plane, g_eval, open_set_ordering, seeded_rng, verify_open_set, Sp2Element,
    UnitaryMatrix5, C64, TAU_GRP, TAU_ZERO,
};
use bazaikin::{
    are_diffeomorphic, canonical_class, classify, enumerate_classes, export_records,
    find_collisions, invariants, load_records, representatives, summarize_counts, CollisionKey,
    CurvatureClass, Error, FiveTuple, Format,
};
use proptest::prelude::*;

#[test]
fn census_pipeline_round_trips() {
    let records = enumerate_classes(250, None).unwrap();
    let summary = summarize_counts(&records);
    assert_eq!(summary.total, records.len());
    assert_eq!(summary.by_class.values().sum::<usize>(), records.len());
    assert_eq!(summary.by_class[&CurvatureClass::AlmostPositive], 1);

    for format in [Format::Jsonl, Format::Csv] {
        let mut bytes = vec![];
        export_records(&records, format, &mut bytes).unwrap();
        assert_eq!(load_records(&bytes[..]).unwrap(), records);
    }

    // every representative reproduces its record
    for r in &records {
        for q in &r.reps {
            let inv = invariants(q).unwrap();
            assert_eq!((inv.p1, inv.s, inv.p2), (r.p1, r.s, r.p2));
            assert_eq!(canonical_class(q).unwrap(), r.canon);
            assert!(classify(q).unwrap() <= r.curvature);
        }
        assert_eq!(representatives(&r.canon).unwrap(), r.reps);
    }
}

#[test]
fn collision_keys_refine() {
    let records = enumerate_classes(400, None).unwrap();
    let count = |k| {
        find_collisions(&records, k)
            .iter()
            .map(Vec::len)
            .sum::<usize>()
    };
    assert!(count(CollisionKey::P1) >= count(CollisionKey::P1S));
    assert!(count(CollisionKey::P1S) >= count(CollisionKey::P1SP2));
}

#[test]
fn diffeomorphism_is_class_equality() {
    let a = FiveTuple::new([7, 1, 1, -3, -3]).unwrap();
    let b = FiveTuple::new([3, 3, 3, -1, -7]).unwrap();
    let c = FiveTuple::new([3, 3, 3, 1, -5]).unwrap();
    assert!(are_diffeomorphic(&a, &b).unwrap());
    assert!(!are_diffeomorphic(&a, &c).unwrap());
    assert!(matches!(
        are_diffeomorphic(&a, &FiveTuple::new([7, -5, 1, 1, -1]).unwrap()),
        Err(Error::InvalidTuple(_))
    ));
}

#[test]
fn open_set_for_a_reordered_tuple() {
    let q = open_set_ordering(&FiveTuple::new([7, 1, -3, 1, -3]).unwrap()).unwrap();
    assert_eq!(q.entries(), [-3, 7, 1, 1, -3]);
    let r = verify_open_set(&q, 0.02, 10, 3).unwrap();
    assert!(r.max_f_h0 < 0.0 && r.min_f_identity > 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn criterion_is_invariant_under_the_circle(seed in any::<u64>(), phi in 0.0f64..std::f64::consts::TAU) {
        let q = FiveTuple::new([5, 3, 1, -1, -3]).unwrap();
        let mut rng = seeded_rng(seed, 0);
        let a = UnitaryMatrix5::random(&mut rng);
        let h = Sp2Element::random(&mut rng);
        let za = a.left_circle(C64::from_polar(1.0, phi), &q.entries());
        prop_assert!((g_eval(&q, &za, &h) - g_eval(&q, &a, &h)).abs() < 1e-12);
        let w = column_weights(&a, &h);
        prop_assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn witnesses_are_zeros_in_the_group(seed in any::<u64>()) {
        let q = FiveTuple::new([1, 1, 1, -1, -3]).unwrap();
        let a = UnitaryMatrix5::random(&mut seeded_rng(seed, 1));
        let r = find_zero_plane(&q, &a, TAU_ZERO).unwrap();
        let h = r.zero_witness.unwrap();
        prop_assert!(g_eval(&q, &a, &h).abs() <= TAU_ZERO);
        prop_assert!(h.quaternionic_residual() <= TAU_GRP);
    }
}
