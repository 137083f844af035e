use proptest::prelude::*;
use proptest::sample::subsequence;

use twovalued::classify::{
    are_isomorphic, classify, is_isomorphism, witness_isomorphism, ClassLabel, DEFAULT_BUDGET,
};
use twovalued::cocycle::{cohomology_invariant, phi_basis, QuasiCocycle};
use twovalued::group::{verify_axioms, ElementId};
use twovalued::structure::{quotient, split_direct_factor, squares_subgroup, Subgroup};
use twovalued::TwoValuedGroup;

/// Labels of groups with at most 40 elements, canonical or not.
fn small_label() -> impl Strategy<Value = ClassLabel> {
    prop_oneof![
        prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 5, 6, 8]), 0..3)
            .prop_filter("small", |c| c.iter().product::<u64>() <= 48)
            .prop_map(ClassLabel::Principal),
        (1usize..=3, 0usize..=1).prop_map(|(n, m)| ClassLabel::Unipotent { n, m }),
        (1usize..=3, 0usize..=2).prop_map(|(n, m)| ClassLabel::Special { n, m }),
    ]
}

fn shuffle_fixing_identity(n: usize, seed: u64) -> Vec<ElementId> {
    // Fisher–Yates over 1..n driven by a splitmix sequence
    let mut state = seed;
    let mut next = || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (2..n).rev() {
        let j = 1 + (next() % i as u64) as usize;
        perm.swap(i, j);
    }
    perm.into_iter().map(ElementId::new).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn classify_recovers_canonical_label(label in small_label()) {
        let g = label.construct().unwrap();
        prop_assert_eq!(g.size() as u64, label.size());
        prop_assert_eq!(classify(&g).unwrap(), label.canonical());
    }

    #[test]
    fn relabelling_preserves_label_and_validity(label in small_label(), seed in any::<u64>()) {
        let g = label.construct().unwrap();
        let perm = shuffle_fixing_identity(g.size(), seed);
        let h = g.permute(&perm);
        prop_assert!(verify_axioms(&h).is_involutive_commutative_group());
        prop_assert!(is_isomorphism(&g, &h, &perm));
        prop_assert_eq!(classify(&h).unwrap(), classify(&g).unwrap());
    }

    #[test]
    fn witness_found_for_relabelled_copy(label in small_label(), seed in any::<u64>()) {
        let g = label.construct().unwrap();
        let h = g.permute(&shuffle_fixing_identity(g.size(), seed));
        let f = witness_isomorphism(&g, &h, DEFAULT_BUDGET).unwrap().expect("isomorphic");
        prop_assert!(is_isomorphism(&g, &h, &f));
    }

    #[test]
    fn witness_agrees_with_labels(a in small_label(), b in small_label()) {
        let (x, z) = (a.construct().unwrap(), b.construct().unwrap());
        prop_assume!(x.size() == z.size());
        let same = are_isomorphic(&x, &z).unwrap();
        prop_assert_eq!(same, a.canonical() == b.canonical());
        let w = witness_isomorphism(&x, &z, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(w.is_some(), same);
    }

    #[test]
    fn direct_split_recovers_boolean_rank(label in small_label()) {
        let g = label.construct().unwrap();
        let split = split_direct_factor(&g).unwrap();
        prop_assert_eq!(split.factor.size() << split.boolean_rank, g.size());
        prop_assert!(verify_axioms(&split.factor).is_involutive_commutative_group());
    }

    #[test]
    fn quotients_by_squares_are_groups(label in small_label()) {
        let g = label.construct().unwrap();
        let q = squares_subgroup(&g).unwrap();
        let quo = quotient(&g, &q).unwrap();
        prop_assert!(verify_axioms(&quo.group).is_involutive_commutative_group());
        prop_assert_eq!(quo.projection.len(), g.size());
    }

    #[test]
    fn invariant_is_additive(dim in 3usize..=5, a in 0u8..2, b in 0u8..2) {
        let pick = |k: u8| -> QuasiCocycle {
            if k == 1 { phi_basis(dim).unwrap() } else { QuasiCocycle::trivial(dim).unwrap() }
        };
        let product = pick(a).mul(&pick(b)).unwrap();
        prop_assert_eq!(cohomology_invariant(&product).unwrap(), a ^ b);
    }
}

fn all_subsets(g: &TwoValuedGroup) -> impl Strategy<Value = Vec<ElementId>> {
    let rest: Vec<ElementId> = g.elements().skip(1).collect();
    let n = rest.len();
    subsequence(rest, 0..=n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subgroup_validation_matches_closure(members in all_subsets(&twovalued::constructions::principal(&[2, 6]).unwrap())) {
        let g = twovalued::constructions::principal(&[2, 6]).unwrap();
        let mut set = vec![ElementId::IDENTITY];
        set.extend(members);
        let closed = set.iter().all(|&a| {
            set.iter().all(|&b| g.mul(a, b).elements().iter().all(|z| set.contains(z)))
        });
        prop_assert_eq!(Subgroup::new(&g, set.iter().copied()).is_ok(), closed);
    }
}
