mod common;

use std::collections::BTreeSet;

use common::{float_signature, named_catalog, numeric_integral, to_f64, turns};
use knotconc::descriptor::{KnotDescriptor, OrderSpec};
use knotconc::exactnum::{prime_power, Ring, UnitCirclePoint};
use knotconc::seifert::{catalog, circle_roots, signature_integral};
use knotconc::Error;
use num_rational::BigRational;
use proptest::prelude::*;

fn atoms() -> Vec<KnotDescriptor> {
    named_catalog()
        .into_iter()
        .map(|(_, a)| KnotDescriptor::Atom(a))
        .collect()
}

fn prime_power_points(max_q: u64) -> impl Iterator<Item = UnitCirclePoint> {
    (2..=max_q)
        .filter(|&q| prime_power(q).is_some())
        .flat_map(UnitCirclePoint::primitive_roots)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn cable_reparametrizes_signature() {
    for k in atoms() {
        let a = k.seifert_matrix().unwrap();
        for r in [2u64, 3, 5] {
            let c = KnotDescriptor::cable(r, k.clone()).unwrap();
            for w in prime_power_points(27) {
                let wr = w.pow(r as i64);
                let expected = if wr.is_one() {
                    0
                } else {
                    float_signature(&a, turns(&wr)).expect("w^r is not an Alexander root")
                };
                assert_eq!(c.sigma_eval(&w).unwrap(), expected, "{c} at {w}");
            }
        }
    }
}

#[test]
fn cable_jumps_sit_at_alexander_roots() {
    for k in atoms() {
        for r in [2u64, 3, 5] {
            let c = KnotDescriptor::cable(r, k.clone()).unwrap();
            let delta = c.alex_eval(Ring::Integers).unwrap();
            assert_eq!(
                delta,
                k.alex_eval(Ring::Integers)
                    .unwrap()
                    .substitute_power(r as i64)
                    .alexander_normalized()
            );
            let roots: BTreeSet<UnitCirclePoint> = circle_roots(&delta)
                .rational
                .into_iter()
                .filter(|w| !w.is_one())
                .collect();
            let breaks: BTreeSet<UnitCirclePoint> = c
                .signature_step()
                .unwrap()
                .breakpoints()
                .into_iter()
                .collect();
            assert_eq!(breaks, roots, "{c}");
        }
    }
}

#[test]
fn cable_keeps_integral() {
    let mut ks = atoms();
    ks.push(KnotDescriptor::atom("metabolic").unwrap());
    for k in ks {
        let base = signature_integral(&k.signature_step().unwrap());
        for r in 2..=7 {
            let c = KnotDescriptor::cable(r, k.clone()).unwrap();
            assert_eq!(
                signature_integral(&c.signature_step().unwrap()),
                base,
                "{c}"
            );
        }
    }
}

#[test]
fn non_prime_power_points_can_be_exceptional() {
    // breakpoints of a cable map onto Alexander roots of the companion
    let c = KnotDescriptor::cable(3, KnotDescriptor::atom("trefoil").unwrap()).unwrap();
    let roots: Vec<UnitCirclePoint> = c.signature_step().unwrap().breakpoints();
    let refused = roots
        .iter()
        .filter(|w| matches!(c.sigma_eval(w), Err(Error::ExceptionalPoint { .. })))
        .count();
    assert!(refused > 0);
}

#[test]
fn trefoil_rho() {
    let t = KnotDescriptor::atom("trefoil").unwrap();
    assert_eq!(
        t.rho_abelian(OrderSpec::finite(6).unwrap()).unwrap(),
        rat(-8, 1)
    );
    assert_eq!(t.rho_abelian(OrderSpec::Infinite).unwrap(), rat(-4, 3));
    let numeric = numeric_integral(&catalog::lookup("trefoil").unwrap(), 10_000);
    assert!((numeric - to_f64(&rat(-4, 3))).abs() < 1e-3);
}

#[test]
fn infection_is_transparent_at_abelian_level() {
    let k = KnotDescriptor::atom("metabolic").unwrap();
    let j = KnotDescriptor::atom("T2_5").unwrap();
    let inf = KnotDescriptor::infect(k.clone(), 1, j);
    assert!(matches!(
        inf.alex_eval(Ring::Integers),
        Err(Error::UnsupportedNode(_))
    ));
    assert!(matches!(
        inf.signature_step(),
        Err(Error::UnsupportedNode(_))
    ));
    assert_eq!(inf.determinant().unwrap(), k.determinant().unwrap());
    assert_eq!(inf.arf().unwrap(), k.arf().unwrap());
    for w in prime_power_points(9) {
        assert_eq!(inf.sigma_eval(&w).unwrap(), k.sigma_eval(&w).unwrap());
    }
}

#[test]
fn expressions_round_trip() {
    for s in [
        "sum(T2_3,mirror(cable(2,T2_5)))",
        "infect(metabolic,eta1,cable(3,figure8))",
        "trefoil",
    ] {
        let k: KnotDescriptor = s.parse().unwrap();
        let again: KnotDescriptor = k.to_expr().parse().unwrap();
        assert_eq!(k, again);
    }
}

fn catalog_knot() -> impl Strategy<Value = KnotDescriptor> {
    let leaf = prop::sample::select(atoms());
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(KnotDescriptor::mirror),
            (2u64..=3, inner.clone()).prop_map(|(r, k)| KnotDescriptor::cable(r, k).unwrap()),
            prop::collection::vec(inner, 2).prop_map(|v| KnotDescriptor::sum(v).unwrap()),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn rho_is_additive(a in catalog_knot(), b in catalog_knot(), d in 1u64..=12) {
        let d = OrderSpec::finite(d).unwrap();
        let s = KnotDescriptor::sum(vec![a.clone(), b.clone()]).unwrap();
        // a finite sum may hit an exceptional point of a cable; both sides must agree on that too
        match (s.rho_abelian(d), a.rho_abelian(d), b.rho_abelian(d)) {
            (Ok(x), Ok(y), Ok(z)) => prop_assert_eq!(x, y + z),
            (Err(_), ya, yb) => prop_assert!(ya.is_err() || yb.is_err()),
            other => prop_assert!(false, "{:?}", other),
        }
        prop_assert_eq!(s.rho_abelian(OrderSpec::Infinite).unwrap(), a.rho_abelian(OrderSpec::Infinite).unwrap() + b.rho_abelian(OrderSpec::Infinite).unwrap());
    }

    #[test]
    fn rho_is_odd_under_mirror(a in catalog_knot(), d in 1u64..=12) {
        let d = OrderSpec::finite(d).unwrap();
        let m = KnotDescriptor::mirror(a.clone());
        match (m.rho_abelian(d), a.rho_abelian(d)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, -y),
            (x, y) => prop_assert!(x.is_err() && y.is_err()),
        }
    }
}
