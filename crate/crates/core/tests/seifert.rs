mod common;

use common::{float_signature, numeric_integral, random_seifert, rng, to_f64, turns};
use knotconc::exactnum::{eval_at_root, prime_power, Ring, UnitCirclePoint};
use knotconc::seifert::{
    catalog, integer_det, signature_function, signature_integral, SeifertMatrix,
};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed};
use proptest::prelude::*;

fn one() -> BigRational {
    BigRational::one()
}

fn full_catalog() -> Vec<SeifertMatrix> {
    let mut out = catalog::integral_exact_catalog();
    for name in ["stevedore", "twist_2", "twist_m3", "cinquefoil"] {
        out.push(catalog::lookup(name).unwrap());
    }
    out
}

fn seifert(max_genus: usize) -> impl Strategy<Value = SeifertMatrix> {
    (any::<u64>(), 1..=max_genus).prop_map(|(seed, g)| random_seifert(&mut rng(seed), g, 3))
}

fn point(max_q: u64) -> impl Strategy<Value = UnitCirclePoint> {
    (2..=max_q)
        .prop_flat_map(|q| (1..q as i64).prop_map(move |r| UnitCirclePoint::new(r, q).unwrap()))
}

#[test]
fn catalog_is_unimodular() {
    for a in full_catalog() {
        assert!(integer_det(&a.antisymmetrization()).abs().is_one(), "{a:?}");
        let delta = a.alexander_poly(Ring::Integers);
        assert_eq!(delta.eval(&one()), one(), "{a:?}");
    }
}

#[test]
fn catalog_determinants() {
    // |Delta(-1)|: T(2,q) has q, figure-eight 5, stevedore 9
    for q in [3, 5, 7, 9, 11] {
        assert_eq!(
            catalog::torus_2q(q).det_at_minus_one().abs(),
            BigInt::from(q)
        );
    }
    assert_eq!(
        catalog::lookup("figure8").unwrap().det_at_minus_one().abs(),
        BigInt::from(5)
    );
    assert_eq!(
        catalog::lookup("stevedore")
            .unwrap()
            .det_at_minus_one()
            .abs(),
        BigInt::from(9)
    );
}

#[test]
fn prime_power_points_avoid_alexander_roots() {
    for a in full_catalog() {
        let delta = a.alexander_poly(Ring::Integers);
        for q in (2..=32).filter(|&q| prime_power(q).is_some()) {
            for w in UnitCirclePoint::primitive_roots(q) {
                assert!(
                    !eval_at_root(&delta, &w).is_zero(),
                    "{delta} vanishes at {w}"
                );
            }
        }
    }
}

#[test]
fn jumps_only_at_alexander_roots() {
    for a in catalog::integral_exact_catalog() {
        let f = signature_function(&a).unwrap();
        for arc in f.arcs() {
            let width = arc.end - arc.start;
            let vals: Vec<i64> = (1..=3)
                .map(|k| {
                    a.levine_tristram(&UnitCirclePoint::from_turns(
                        arc.start + width * Ratio::new(k, 4),
                    ))
                })
                .collect();
            assert!(
                vals.iter().all(|&v| v == arc.value),
                "{a:?} on {arc:?}: {vals:?}"
            );
        }
    }
}

#[test]
fn integral_matches_numeric() {
    for a in catalog::integral_exact_catalog() {
        let exact = to_f64(&signature_integral(&signature_function(&a).unwrap()));
        let numeric = numeric_integral(&a, 10_000);
        assert!(
            (exact - numeric).abs() < 1e-3,
            "{a:?}: exact {exact}, numeric {numeric}"
        );
    }
}

#[test]
fn connected_sum_multiplies_alexander() {
    let t = catalog::lookup("trefoil").unwrap();
    let e = catalog::lookup("figure8").unwrap();
    let s = t.connected_sum(&e);
    assert_eq!(
        s.alexander_poly(Ring::Integers),
        &t.alexander_poly(Ring::Integers) * &e.alexander_poly(Ring::Integers)
    );
    assert_eq!(
        t.connected_sum(&SeifertMatrix::unknot()).entries(),
        t.entries()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn signature_is_conjugation_symmetric(a in seifert(2), w in point(30)) {
        prop_assert_eq!(a.levine_tristram(&w), a.levine_tristram(&w.conj()));
    }

    #[test]
    fn signature_matches_eigenvalue_count(a in seifert(2), w in point(24)) {
        if let Some(expected) = float_signature(&a, turns(&w)) {
            prop_assert_eq!(a.levine_tristram(&w), expected);
        }
    }

    #[test]
    fn arf_is_additive(a in seifert(2), b in seifert(2)) {
        prop_assert_eq!(a.connected_sum(&b).arf(), (a.arf() + b.arf()) % 2);
    }

    #[test]
    fn signature_is_additive(a in seifert(2), b in seifert(1), w in point(20)) {
        prop_assert_eq!(a.connected_sum(&b).levine_tristram(&w), a.levine_tristram(&w) + b.levine_tristram(&w));
    }

    #[test]
    fn mirror_negates_signature(a in seifert(2), w in point(20)) {
        prop_assert_eq!(a.mirror().levine_tristram(&w), -a.levine_tristram(&w));
    }
}

#[test]
fn random_matrices_are_valid() {
    let mut r = rng(7);
    for g in 1..=3 {
        let a = random_seifert(&mut r, g, 4);
        assert_eq!(a.alexander_poly(Ring::Integers).eval(&one()), one());
    }
}
