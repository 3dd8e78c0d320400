//! Certified sign determination for real cyclotomic numbers.
//!
//! Zero is decided algebraically (the power-basis representation is unique).
//! For a nonzero element we evaluate `sum c_k cos(2 pi k / q)` in binary fixed
//! point with a rigorous error radius and double the precision until the
//! enclosure excludes zero. This always terminates because the value is
//! nonzero.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::CyclotomicElement;

/// Guard bits carried beyond the requested precision.
const GUARD: u32 = 32;

/// `round(pi * 2^bits)` with error below `2^-bits * 4`.
fn pi_fixed(bits: u32) -> BigInt {
    // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
    let w = bits + GUARD;
    let atan_inv = |x: u64| -> BigInt {
        let one = BigInt::one() << w;
        let x2 = BigInt::from(x * x);
        let mut term = &one / BigInt::from(x);
        let mut sum = term.clone();
        let mut k = 1u64;
        while !term.is_zero() {
            term = &term / &x2;
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= &t;
            } else {
                sum += &t;
            }
            k += 1;
        }
        sum
    };
    let pi = atan_inv(5) * 16 - atan_inv(239) * 4;
    pi >> GUARD
}

/// `cos(2 pi k / q) * 2^bits`, error at most `2^-bits` in value (well inside).
fn cos_fixed(k: u64, q: u64, bits: u32) -> BigInt {
    // cos(2pi f) = cos(2pi (1 - f)), and for f in (1/4, 1/2]
    // cos(2pi f) = -cos(2pi (1/2 - f))
    let k = k % q;
    let num = k.min(q - k);
    if 4 * num > q {
        -cos_small(q - 2 * num, 2 * q, bits)
    } else {
        cos_small(num, q, bits)
    }
}

/// cos(2 pi num / den) for `num/den` in `[0, 1/4]`, Taylor series.
fn cos_small(num: u64, den: u64, bits: u32) -> BigInt {
    let w = bits + GUARD;
    let one = BigInt::one() << w;
    let pi = pi_fixed(w);
    let x = (pi * BigInt::from(2 * num)) / BigInt::from(den); // x in [0, pi/2]
    let x2 = (&x * &x) >> w;
    let mut term = one.clone();
    let mut sum = one;
    let mut n = 1u64;
    while !term.is_zero() {
        term = (&term * &x2) >> w;
        term = &term / BigInt::from((2 * n - 1) * (2 * n));
        if n % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        n += 1;
    }
    sum >> GUARD
}

type CosTables = RwLock<HashMap<(u64, u32), Arc<Vec<BigInt>>>>;

fn cos_table(q: u64, bits: u32) -> Arc<Vec<BigInt>> {
    static TABLES: OnceLock<CosTables> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.read().unwrap().get(&(q, bits)) {
        return t.clone();
    }
    let t: Arc<Vec<BigInt>> = Arc::new((0..q).map(|k| cos_fixed(k, q, bits)).collect());
    tables
        .write()
        .unwrap()
        .entry((q, bits))
        .or_insert(t)
        .clone()
}

/// Exact sign of a real element of a cyclotomic field: `-1`, `0` or `1`.
///
/// Panics if `x` is not fixed by complex conjugation.
pub fn certified_sign(x: &CyclotomicElement) -> i32 {
    assert!(x.is_real(), "certified_sign needs a real element, got {x}");
    if x.is_zero() {
        return 0;
    }
    if let Some(r) = x.as_rational() {
        return if r.is_positive() { 1 } else { -1 };
    }
    let q = x.conductor();
    // integer coefficients n_k = c_k * D
    let den = x
        .coords()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = x
        .coords()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let l1: BigInt = ints.iter().map(|n| n.abs()).sum();
    let mut bits = 64u32;
    loop {
        let table = cos_table(q, bits);
        let approx: BigInt = ints
            .iter()
            .zip(table.iter())
            .filter(|(n, _)| !n.is_zero())
            .map(|(n, c)| n * c)
            .sum();
        // each table entry is within 2 units of the last place
        let radius = &l1 * 2 + 1;
        if approx.abs() > radius {
            return if approx.sign() == Sign::Plus { 1 } else { -1 };
        }
        bits *= 2;
        assert!(bits < 1 << 20, "sign determination did not converge");
    }
}

/// `cos(2 pi k / q)` as a fixed-point enclosure `(mid, 2^-bits)`; exposed for
/// interval refinements elsewhere in the crate.
pub(crate) fn cos_enclosure(k: u64, q: u64, bits: u32) -> (BigRational, BigRational) {
    let mid = BigRational::new(cos_fixed(k, q, bits), BigInt::one() << bits);
    let rad = BigRational::new(BigInt::from(2), BigInt::one() << bits);
    (mid, rad)
}
