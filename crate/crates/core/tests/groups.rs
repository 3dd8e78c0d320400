mod common;

use common::{brute_derived_series, wirtinger_from_braid};
use knotconc::blanchfield::AlexanderModule;
use knotconc::exactnum::Ring;
use knotconc::groups::{
    abelianization, alexander_from_presentation, concat, fox_derivative, free_reduce, inverse,
    mixed_series_finite_oracle, p1_quotient, CoefficientSequence, FiniteGroup, GroupPresentation,
    GroupRingElement, Word,
};
use knotconc::seifert::catalog;
use knotconc::Error;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn trefoil_wirtinger() -> GroupPresentation {
    GroupPresentation::parse_text("gens: 3; rel: abAC; rel: bcBA; rel: caCB").unwrap()
}

const FIELDS: [Ring; 4] = [Ring::Rationals, Ring::ModP(2), Ring::ModP(3), Ring::ModP(5)];

fn assert_same_module(p: &GroupPresentation, seifert: &str) {
    let a = catalog::lookup(seifert).unwrap();
    for ring in FIELDS {
        let fox = alexander_from_presentation(p, ring).unwrap();
        let sei = AlexanderModule::from_seifert(&a, ring).unwrap();
        assert_eq!(
            fox.invariant_factors(),
            sei.invariant_factors(),
            "{seifert} over {ring}: {p}"
        );
        assert_eq!(fox.free_rank(), 0);
    }
}

#[test]
fn wirtinger_matches_seifert() {
    assert_same_module(&trefoil_wirtinger(), "trefoil");
    assert_same_module(&wirtinger_from_braid(2, &[1, 1, 1]), "trefoil");
    assert_same_module(&wirtinger_from_braid(3, &[1, -2, 1, -2]), "figure8");
    assert_same_module(&wirtinger_from_braid(2, &[1, 1, 1, 1, 1]), "T2_5");
    assert_same_module(&GroupPresentation::figure_eight(), "figure8");
    assert_same_module(
        &GroupPresentation::braid_closure(3, &[1, -2, 1, -2]).unwrap(),
        "figure8",
    );
}

#[test]
fn figure_eight_factor() {
    let m = alexander_from_presentation(&wirtinger_from_braid(3, &[1, -2, 1, -2]), Ring::Rationals)
        .unwrap();
    assert_eq!(m.invariant_factors().len(), 1);
    assert_eq!(m.invariant_factors()[0].to_string(), "t^2 - 3t + 1");
}

#[test]
fn non_knot_groups_are_refused() {
    let z2 = GroupPresentation::parse_text("gens: 2; rel: abAB").unwrap();
    assert!(matches!(
        alexander_from_presentation(&z2, Ring::Rationals),
        Err(Error::NonCyclicAbelianization(_))
    ));
}

#[test]
fn first_quotients() {
    // Z -> Z_p gives Z/p
    let knot = trefoil_wirtinger();
    assert!(abelianization(&knot).is_infinite_cyclic());
    for p in [2u64, 3, 5, 7] {
        let q = p1_quotient(&knot, Ring::ModP(p));
        assert_eq!((q.free_rank, q.torsion.clone()), (0, vec![p]));
    }
    assert!(p1_quotient(&knot, Ring::Rationals).is_infinite_cyclic());
    // Z + Z/6 with Z_3 gives (Z/3)^2
    let g = GroupPresentation::parse_text("gens: 2; rel: abAB; rel: bbbbbb").unwrap();
    let h = abelianization(&g);
    assert_eq!((h.free_rank, h.torsion.clone()), (1, vec![6]));
    let q = p1_quotient(&g, Ring::ModP(3));
    assert_eq!((q.free_rank, q.torsion), (0, vec![3, 3]));
    let q = p1_quotient(&g, Ring::ModP(5));
    assert_eq!((q.free_rank, q.torsion), (0, vec![5]));
    assert_eq!(p1_quotient(&g, Ring::Rationals).free_rank, 1);
    assert!(p1_quotient(&g, Ring::Rationals).torsion.is_empty());
}

#[test]
fn integral_series_is_derived_series() {
    for g in FiniteGroup::test_set() {
        let oracle = mixed_series_finite_oracle(&g, &CoefficientSequence::integers(4));
        assert_eq!(oracle, brute_derived_series(&g, 4), "{}", g.name());
    }
    let sizes = |g: FiniteGroup| {
        brute_derived_series(&g, 3)
            .iter()
            .map(|h| h.len())
            .collect::<Vec<_>>()
    };
    assert_eq!(sizes(FiniteGroup::symmetric3()), [6, 3, 1, 1]);
    assert_eq!(sizes(FiniteGroup::quaternion()), [8, 2, 1, 1]);
}

#[test]
fn derived_series_sits_inside_mixed_series() {
    for seq in ["z,z", "q,z3", "z3,q", "z2,z3", "z5,z2"] {
        let seq = CoefficientSequence::parse(seq).unwrap();
        for g in FiniteGroup::test_set() {
            let mixed = mixed_series_finite_oracle(&g, &seq);
            let derived = brute_derived_series(&g, seq.len());
            for k in 0..=seq.len() {
                assert!(derived[k].is_subset(&mixed[k]), "{} k={k}", g.name());
                if k > 0 {
                    assert!(mixed[k].is_subset(&mixed[k - 1]));
                }
            }
        }
    }
}

#[test]
fn cyclic_six_mod_three() {
    let s = mixed_series_finite_oracle(
        &FiniteGroup::cyclic(6),
        &CoefficientSequence::parse("z3").unwrap(),
    );
    assert_eq!(s[1], BTreeSet::from([0, 3]));
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![1i32..=3, -3i32..=-1], 0..=20)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fox_fundamental_identity(w in word()) {
        let mut sum = GroupRingElement::zero();
        for g in 1..=3 {
            let gm1 = &GroupRingElement::word(&[g]) - &GroupRingElement::one();
            sum = &sum + &(&fox_derivative(&w, g) * &gm1);
        }
        let rhs = &GroupRingElement::word(&w) - &GroupRingElement::one();
        prop_assert_eq!(sum, rhs);
    }

    #[test]
    fn free_reduction_is_a_group_law(a in word(), b in word()) {
        prop_assert!(free_reduce(&concat(&a, &inverse(&a))).is_empty());
        let ab = free_reduce(&concat(&a, &b));
        prop_assert_eq!(free_reduce(&concat(&ab, &inverse(&b))), free_reduce(&a));
    }
}
