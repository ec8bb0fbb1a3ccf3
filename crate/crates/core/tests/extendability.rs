use proptest::prelude::*;
use zonoforge::cubillage::enumerate;
use zonoforge::extendability::{
    check_lemma_diag_growth, check_lemma_ground_growth, check_prop_bd, cube_collection, is_extendable, replay,
    CertificateKind,
};
use zonoforge::setcalc::{is_r_separated_collection, universal_sets, Collection, SubsetMask};
use zonoforge::AuditCaps;

fn caps() -> AuditCaps {
    AuditCaps::default()
}

#[test]
fn triple_is_not_extendable_after_growth() {
    let a = Collection::parse(6, "24,35,1346").unwrap();
    let check = check_lemma_ground_growth(&a, 6, 4, &caps()).unwrap();
    assert!(!check.before && !check.after);
    let check = check_lemma_diag_growth(&a, 6, 4, &caps()).unwrap();
    assert!(!check.before && !check.after);
}

#[test]
fn universal_sets_extend_everywhere() {
    for (n, d) in [(4, 2), (5, 3), (6, 4), (7, 4)] {
        let u = universal_sets(n, d).unwrap();
        let cert = is_extendable(&u, n, d, &caps()).unwrap();
        assert_eq!(cert.kind, CertificateKind::ExtensionFound);
        assert!(replay(&cert, &caps()).unwrap().valid);
    }
}

#[test]
fn cubes_of_low_dimension_extend() {
    for (n, d) in [(5, 3), (6, 4), (6, 3)] {
        for size in 0..=d {
            for dset in SubsetMask::k_subsets(n, size).unwrap() {
                let rest = SubsetMask::full(n).unwrap().difference(dset);
                for a in rest.subsets().step_by(3) {
                    let c = cube_collection(a, dset);
                    assert!(is_extendable(&c, n, d, &caps()).unwrap().extendable(), "{a} + {dset}");
                }
            }
        }
    }
}

#[test]
fn cube_on_three_elements_with_small_tails() {
    let cube = Collection::new(3, SubsetMask::full(3).unwrap().subsets()).unwrap();
    for n in 4..=6 {
        for e in 4..=n {
            let dset = SubsetMask::from_elements(n, &[e]).unwrap();
            assert!(check_prop_bd(3, &cube, dset, &caps()).unwrap());
        }
    }
    let wide = Collection::parse(3, "13,2").unwrap();
    let dset = SubsetMask::from_elements(5, &[4]).unwrap();
    assert!(check_prop_bd(3, &wide, dset, &caps()).is_ok());
}

#[test]
fn every_spectrum_subset_extends() {
    for q in enumerate(5, 3, &caps()).unwrap() {
        let spec = q.unwrap().spectrum().unwrap();
        let half = Collection::new(5, spec.iter().step_by(2)).unwrap();
        assert!(is_extendable(&half, 5, 3, &caps()).unwrap().extendable());
    }
}

fn collection(n: usize) -> impl Strategy<Value = Collection> {
    proptest::collection::vec(0u32..(1 << n), 0..8)
        .prop_map(move |bits| Collection::new(n, bits.into_iter().map(|b| SubsetMask::new(n, b).unwrap())).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn certificates_replay_and_are_deterministic(a in collection(6)) {
        prop_assume!(is_r_separated_collection(&a, 3).ok);
        let first = is_extendable(&a, 6, 4, &caps()).unwrap();
        let second = is_extendable(&a, 6, 4, &caps()).unwrap();
        prop_assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
        prop_assert!(replay(&first, &caps()).unwrap().valid);
    }

    #[test]
    fn ground_growth_agrees_on_two_separated(a in collection(5)) {
        prop_assume!(is_r_separated_collection(&a, 2).ok);
        prop_assert!(check_lemma_ground_growth(&a, 5, 3, &caps()).unwrap().agree());
    }
}
