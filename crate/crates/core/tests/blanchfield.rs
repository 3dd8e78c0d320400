mod common;

use common::{named_catalog, rng};
use knotconc::blanchfield::{
    is_nonsingular, mod_p_nontrivial, seifert_presentation, smith_normal_form, AlexanderModule,
    Blanchfield, BlanchfieldValue, LaurentMatrix, LaurentVector,
};
use knotconc::exactnum::{LaurentPoly, Ring};
use knotconc::seifert::{catalog, SeifertMatrix};
use rand::Rng;

const RINGS: [Ring; 5] = [
    Ring::Rationals,
    Ring::ModP(2),
    Ring::ModP(3),
    Ring::ModP(5),
    Ring::ModP(7),
];

fn random_poly(r: &mut impl Rng, ring: Ring) -> LaurentPoly {
    let coeffs: Vec<i64> = (0..r.gen_range(1..=3))
        .map(|_| r.gen_range(-3..=3))
        .collect();
    LaurentPoly::from_coeffs(ring, r.gen_range(-1..=1), &coeffs)
}

fn random_vector(r: &mut impl Rng, ring: Ring, n: usize) -> LaurentVector {
    (0..n).map(|_| random_poly(r, ring)).collect()
}

fn add(x: &[LaurentPoly], y: &[LaurentPoly]) -> LaurentVector {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}

fn column(m: &LaurentMatrix, j: usize) -> LaurentVector {
    m.iter().map(|row| row[j].clone()).collect()
}

fn det(m: &LaurentMatrix, ring: Ring) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(ring);
    }
    let mut acc = LaurentPoly::zero(ring);
    for j in 0..n {
        let minor: LaurentMatrix = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &det(&minor, ring);
        acc = if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}

/// `(1 - t) conj(x)^T adj(M) y / det(M)` by cofactors.
fn adjugate_pairing(
    a: &SeifertMatrix,
    ring: Ring,
    x: &[LaurentPoly],
    y: &[LaurentPoly],
) -> BlanchfieldValue {
    let m = seifert_presentation(a, ring).unwrap();
    let n = m.len();
    let minor = |i: usize, j: usize| -> LaurentMatrix {
        m.iter()
            .enumerate()
            .filter(|&(r, _)| r != i)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect()
    };
    let mut num = LaurentPoly::zero(ring);
    for i in 0..n {
        for j in 0..n {
            // adj(M)[i][j] = (-1)^(i+j) det(minor(j, i))
            let c = det(&minor(j, i), ring);
            let term = &(&x[i].conj() * &c) * &y[j];
            num = if (i + j) % 2 == 0 {
                &num + &term
            } else {
                &num - &term
            };
        }
    }
    let one_minus_t = LaurentPoly::from_coeffs(ring, 0, &[1, -1]);
    BlanchfieldValue::new(&one_minus_t * &num, det(&m, ring))
}

#[test]
fn pairing_axioms_on_catalog() {
    let mut r = rng(11);
    for (name, a) in named_catalog() {
        for ring in RINGS {
            let bl = Blanchfield::new(&a, ring).unwrap();
            let n = a.size();
            let pres = bl.module().presentation().clone();
            for _ in 0..50 {
                let (x, y) = (
                    random_vector(&mut r, ring, n),
                    random_vector(&mut r, ring, n),
                );
                let v = bl.pair(&x, &y).unwrap();
                assert_eq!(
                    v,
                    bl.pair(&y, &x).unwrap().conj(),
                    "hermitian: {name} over {ring}"
                );
                let f = random_poly(&mut r, ring);
                let fx: LaurentVector = x.iter().map(|c| &f * c).collect();
                assert_eq!(
                    bl.pair(&fx, &y).unwrap(),
                    v.times(&f.conj()),
                    "linearity: {name} over {ring}"
                );
                let j = r.gen_range(0..n);
                assert_eq!(
                    bl.pair(&add(&x, &column(&pres, j)), &y).unwrap(),
                    v,
                    "well-defined: {name} over {ring}"
                );
                assert_eq!(
                    bl.pair(&x, &add(&y, &column(&pres, j))).unwrap(),
                    v,
                    "well-defined: {name} over {ring}"
                );
            }
            assert!(bl.is_nonsingular(), "{name} over {ring}");
        }
    }
}

#[test]
fn pairing_matches_adjugate_formula() {
    let mut r = rng(12);
    let small = [
        catalog::torus_2q(3),
        catalog::torus_2q(5),
        catalog::lookup("figure8").unwrap(),
        catalog::lookup("stevedore").unwrap(),
    ];
    for a in small {
        for ring in RINGS {
            let bl = Blanchfield::new(&a, ring).unwrap();
            for _ in 0..10 {
                let (x, y) = (
                    random_vector(&mut r, ring, a.size()),
                    random_vector(&mut r, ring, a.size()),
                );
                assert_eq!(bl.pair(&x, &y).unwrap(), adjugate_pairing(&a, ring, &x, &y));
            }
        }
    }
}

#[test]
fn invariant_factors_multiply_to_alexander() {
    for (name, a) in named_catalog() {
        for ring in RINGS {
            let m = AlexanderModule::from_seifert(&a, ring).unwrap();
            let order = m.order().unwrap().alexander_normalized();
            assert_eq!(
                order,
                a.alexander_poly(ring).alexander_normalized(),
                "{name} over {ring}"
            );
            let f = m.invariant_factors();
            for w in f.windows(2) {
                assert!(
                    w[0].divides(&w[1]),
                    "{name} over {ring}: divisibility chain"
                );
            }
        }
    }
}

#[test]
fn trefoil_mod_three() {
    let m =
        AlexanderModule::from_seifert(&catalog::lookup("trefoil").unwrap(), Ring::ModP(3)).unwrap();
    let expected = LaurentPoly::from_coeffs(Ring::ModP(3), 0, &[1, 2, 1]);
    assert_eq!(m.invariant_factors(), vec![expected]);
    let q = AlexanderModule::from_seifert(&catalog::lookup("trefoil").unwrap(), Ring::Rationals)
        .unwrap();
    assert_eq!(
        q.invariant_factors(),
        vec![LaurentPoly::from_coeffs(Ring::Rationals, 0, &[1, -1, 1])]
    );
}

#[test]
fn change_of_coefficients() {
    for (name, a) in named_catalog() {
        let q = AlexanderModule::from_seifert(&a, Ring::Rationals).unwrap();
        for p in [5u64, 7, 11] {
            let ring = Ring::ModP(p);
            let m = AlexanderModule::from_seifert(&a, ring).unwrap();
            assert_eq!(m.dimension(), q.dimension(), "{name} mod {p}");
            assert!(m.invariant_factors().len() >= q.invariant_factors().len());
            let reduced = q
                .order()
                .unwrap()
                .to_ring(ring)
                .unwrap()
                .alexander_normalized();
            assert_eq!(
                m.order().unwrap().alexander_normalized(),
                reduced,
                "{name} mod {p}"
            );
            assert!(is_nonsingular(&a, ring).unwrap());
        }
    }
}

#[test]
fn mod_p_nontriviality() {
    let t = catalog::lookup("trefoil").unwrap();
    assert!(mod_p_nontrivial(&t, 7).unwrap());
    assert!(!mod_p_nontrivial(&SeifertMatrix::unknot(), 3).unwrap());
    // Delta = 2t^2 - 3t + 2 becomes a unit mod 2
    let twist = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -2]]).unwrap();
    assert!(!mod_p_nontrivial(&twist, 2).unwrap());
    assert!(mod_p_nontrivial(&twist, 5).unwrap());
}

#[test]
fn smith_form_reconstructs() {
    let mut r = rng(13);
    let ring = Ring::ModP(5);
    for _ in 0..20 {
        let m: LaurentMatrix = (0..3)
            .map(|_| {
                (0..3)
                    .map(|_| {
                        LaurentPoly::from_coeffs(
                            ring,
                            0,
                            &(0..4).map(|_| r.gen_range(0..5)).collect::<Vec<i64>>(),
                        )
                    })
                    .collect()
            })
            .collect();
        let s = smith_normal_form(&m, ring).unwrap();
        let back = s.reconstruct(ring);
        assert_eq!(back, m);
        for w in s.d.windows(2) {
            assert!(w[1].is_zero() || w[0].divides(&w[1]));
        }
    }
}
