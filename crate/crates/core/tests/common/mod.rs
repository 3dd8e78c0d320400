//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::TAU;

use std::collections::BTreeSet;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use knotconc::exactnum::{CyclotomicElement, LaurentPoly, UnitCirclePoint};
use knotconc::groups::{FiniteGroup, GroupPresentation, Subgroup, Word};
use knotconc::seifert::{catalog, SeifertMatrix};
use nalgebra::{Complex, DMatrix};
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `N + E` with `N` symmetric and `E` the upper half of the standard
/// symplectic form, so `A - A^T` is unimodular.
pub fn random_seifert(rng: &mut impl Rng, genus: usize, bound: i64) -> SeifertMatrix {
    let n = 2 * genus;
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-bound..=bound);
            a[i][j] = v;
            a[j][i] = v;
        }
    }
    for k in 0..genus {
        a[2 * k][2 * k + 1] += 1;
    }
    SeifertMatrix::new(a).expect("unimodular antisymmetrization")
}

/// T(2,q) for q in {3,5,7,9,11} and the figure-eight knot.
pub fn named_catalog() -> Vec<(String, SeifertMatrix)> {
    let mut out: Vec<(String, SeifertMatrix)> = [3, 5, 7, 9, 11]
        .iter()
        .map(|&q| (format!("T2_{q}"), catalog::torus_2q(q)))
        .collect();
    out.push(("figure8".into(), catalog::lookup("figure8").unwrap()));
    out
}

fn tristram_complex(a: &SeifertMatrix, turns: f64) -> DMatrix<Complex<f64>> {
    let w = Complex::from_polar(1.0, TAU * turns);
    let one = Complex::new(1.0, 0.0);
    let e = a.entries();
    let n = a.size();
    DMatrix::from_fn(n, n, |i, j| {
        (one - w) * e[i][j] as f64 + (one - w.conj()) * e[j][i] as f64
    })
}

fn eigenvalues(a: &SeifertMatrix, turns: f64) -> Vec<f64> {
    if a.size() == 0 {
        return Vec::new();
    }
    tristram_complex(a, turns)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect()
}

/// Eigenvalue-count signature; `None` when some eigenvalue is within `1e-8`
/// of zero.
pub fn float_signature(a: &SeifertMatrix, turns: f64) -> Option<i64> {
    let ev = eigenvalues(a, turns);
    if ev.iter().any(|l| l.abs() < 1e-8) {
        return None;
    }
    Some(ev.iter().map(|&l| if l > 0.0 { 1 } else { -1 }).sum())
}

/// Same count, treating near-zero eigenvalues as zero.
pub fn float_signature_lenient(a: &SeifertMatrix, turns: f64) -> i64 {
    eigenvalues(a, turns)
        .iter()
        .map(|&l| {
            if l > 1e-8 {
                1
            } else if l < -1e-8 {
                -1
            } else {
                0
            }
        })
        .sum()
}

/// Mean of the signature over `samples` equally spaced points, which is the
/// trapezoidal rule for a periodic function.
pub fn numeric_integral(a: &SeifertMatrix, samples: usize) -> f64 {
    let total: i64 = (0..samples)
        .map(|k| float_signature_lenient(a, k as f64 / samples as f64))
        .sum();
    total as f64 / samples as f64
}

pub fn to_f64(x: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap()
}

pub fn turns(w: &UnitCirclePoint) -> f64 {
    w.numer() as f64 / w.order() as f64
}

/// High-precision complex evaluation.
pub struct HighPrecision {
    pub bits: usize,
    cc: Consts,
}

const RM: RoundingMode = RoundingMode::ToEven;

impl HighPrecision {
    pub fn new(digits: usize) -> Self {
        HighPrecision {
            bits: digits * 10 / 3 + 64,
            cc: Consts::new().expect("constants cache"),
        }
    }

    pub fn rational(&mut self, x: &BigRational) -> BigFloat {
        let n = BigFloat::parse(
            &x.numer().to_string(),
            Radix::Dec,
            self.bits,
            RM,
            &mut self.cc,
        );
        let d = BigFloat::parse(
            &x.denom().to_string(),
            Radix::Dec,
            self.bits,
            RM,
            &mut self.cc,
        );
        n.div(&d, self.bits, RM)
    }

    /// `(cos, sin)` of `2 pi k / q`.
    pub fn root(&mut self, k: i64, q: u64) -> (BigFloat, BigFloat) {
        let p = self.bits;
        let pi = self.cc.pi(p, RM);
        let angle =
            pi.mul(&BigFloat::from_i64(2 * k, p), p, RM)
                .div(&BigFloat::from_u64(q, p), p, RM);
        (
            angle.cos(p, RM, &mut self.cc),
            angle.sin(p, RM, &mut self.cc),
        )
    }

    fn sum(
        &mut self,
        terms: impl IntoIterator<Item = (BigRational, i64, u64)>,
    ) -> (BigFloat, BigFloat) {
        let p = self.bits;
        let (mut re, mut im) = (BigFloat::from_i64(0, p), BigFloat::from_i64(0, p));
        for (c, k, q) in terms {
            let c = self.rational(&c);
            let (x, y) = self.root(k, q);
            re = re.add(&c.mul(&x, p, RM), p, RM);
            im = im.add(&c.mul(&y, p, RM), p, RM);
        }
        (re, im)
    }

    /// `p(w)` summed term by term.
    pub fn eval_laurent(
        &mut self,
        poly: &LaurentPoly,
        w: &UnitCirclePoint,
    ) -> (BigFloat, BigFloat) {
        let q = w.order();
        let r = w.numer() as i64;
        let terms: Vec<_> = poly.terms().map(|(e, c)| (c.clone(), e * r, q)).collect();
        self.sum(terms)
    }

    /// Value of a cyclotomic element from its power-basis coordinates.
    pub fn eval_cyclotomic(&mut self, x: &CyclotomicElement) -> (BigFloat, BigFloat) {
        let q = x.conductor();
        let terms: Vec<_> = x
            .coords()
            .iter()
            .enumerate()
            .map(|(k, c)| (c.clone(), k as i64, q))
            .collect();
        self.sum(terms)
    }

    /// `|a - b| < 2^-bits_agree`
    pub fn close(&self, a: &BigFloat, b: &BigFloat, bits_agree: i32) -> bool {
        let d = a.sub(b, self.bits, RM);
        d.is_zero() || d.exponent().is_some_and(|e| e < -bits_agree)
    }

    /// Sign of `x` if `|x| > 2^-bits`, else `None`.
    pub fn sign(&self, x: &BigFloat, bits: i32) -> Option<i32> {
        if x.is_zero() || x.exponent().is_some_and(|e| e < -bits) {
            return None;
        }
        Some(if x.is_negative() { -1 } else { 1 })
    }
}

/// `10^-50` expressed in bits.
pub const FIFTY_DIGITS_BITS: i32 = 167;

/// Wirtinger presentation of a braid closure, one generator per arc.
pub fn wirtinger_from_braid(strands: usize, braid: &[i32]) -> GroupPresentation {
    let mut label: Vec<i32> = (1..=strands as i32).collect();
    let mut next = strands as i32 + 1;
    let mut rels: Vec<Word> = Vec::new();
    for &s in braid {
        let i = s.unsigned_abs() as usize;
        let (a, b) = (label[i - 1], label[i]);
        let y = next;
        next += 1;
        if s > 0 {
            // the strand in position i goes under a
            rels.push(vec![-y, a, b, -a]);
            label[i - 1] = y;
            label[i] = a;
        } else {
            rels.push(vec![-y, -b, a, b]);
            label[i - 1] = b;
            label[i] = y;
        }
    }
    for (k, &l) in label.iter().enumerate() {
        if l != k as i32 + 1 {
            rels.push(vec![l, -(k as i32 + 1)]);
        }
    }
    GroupPresentation::new((next - 1) as usize, rels).unwrap()
}

/// Derived series by closing the set of all commutators under products.
pub fn brute_derived_series(g: &FiniteGroup, len: usize) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = vec![(0..g.order()).collect()];
    for _ in 0..len {
        let h = out.last().unwrap();
        let mut s: BTreeSet<usize> = BTreeSet::from([0]);
        for &a in h {
            for &b in h {
                s.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
            }
        }
        loop {
            let prods: Vec<usize> = s
                .iter()
                .flat_map(|&x| s.iter().map(move |&y| (x, y)))
                .map(|(x, y)| g.mul(x, y))
                .collect();
            let before = s.len();
            s.extend(prods);
            if s.len() == before {
                break;
            }
        }
        out.push(s);
    }
    out
}
