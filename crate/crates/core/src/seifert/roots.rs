//! Location of the unit-circle roots of an Alexander polynomial.
//!
//! Roots of unity are found by dividing out cyclotomic factors. What is left
//! is palindromic; writing it as `t^k S(t + 1/t)` turns its unit-circle roots
//! into the real roots of `S` in `(-2, 2)`, which Sturm sequences count and
//! isolate exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{cyclotomic_poly, euler_phi, LaurentPoly, Ring, UnitCirclePoint};

/// Unit-circle roots of a nonzero integral or rational Laurent polynomial.
#[derive(Clone, Debug)]
pub struct CircleRoots {
    /// Roots of unity on the closed upper half circle, ascending by angle.
    pub rational: Vec<UnitCirclePoint>,
    /// Isolating intervals, in the coordinate `x = 2 cos(theta)`, for roots on
    /// the open upper half circle that are not roots of unity.
    pub irrational: Vec<(BigRational, BigRational)>,
}

pub fn circle_roots(p: &LaurentPoly) -> CircleRoots {
    let mut rest = p
        .to_ring(Ring::Rationals)
        .expect("rational coefficients")
        .monic();
    let mut rational = Vec::new();
    let deg = rest.span() as u64;
    let mut m = 1u64;
    // phi(m) >= sqrt(m / 2)
    while m <= 2 * deg * deg + 2 {
        if euler_phi(m) as usize <= rest.span() {
            let phi: Vec<BigRational> = cyclotomic_poly(m)
                .into_iter()
                .map(BigRational::from_integer)
                .collect();
            let phi = LaurentPoly::from_rational_coeffs(Ring::Rationals, 0, &phi);
            let mut found = false;
            while let Some(q) = rest.exact_div(&phi) {
                rest = q.monic();
                found = true;
            }
            if found {
                rational.extend(UnitCirclePoint::primitive_roots(m).filter(|w| w.in_upper_half()));
            }
        }
        m += 1;
    }
    rational.sort();
    let irrational = if rest.span() == 0 {
        Vec::new()
    } else {
        isolate_trace_roots(&rest)
    };
    CircleRoots {
        rational,
        irrational,
    }
}

/// `S` with `p(t) = t^k S(t + 1/t)` for palindromic `p` of degree `2k`.
pub(crate) fn trace_polynomial(p: &LaurentPoly) -> Option<Vec<BigRational>> {
    let low = p.low_exp()?;
    let p = p.shift(-low);
    let n = p.span();
    if n % 2 == 1 {
        return None;
    }
    if (0..=n as i64).any(|e| p.coeff(e) != p.coeff(n as i64 - e)) {
        return None;
    }
    let k = n / 2;
    // Dickson: D_0 = 2, D_1 = x, D_j = x D_{j-1} - D_{j-2};  t^j + t^-j = D_j(x)
    let mut dickson: Vec<Vec<BigRational>> = vec![
        vec![BigRational::from_integer(BigInt::from(2))],
        vec![BigRational::zero(), BigRational::one()],
    ];
    for j in 2..=k {
        let mut next = vec![BigRational::zero(); j + 1];
        for (i, c) in dickson[j - 1].iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in dickson[j - 2].iter().enumerate() {
            next[i] -= c;
        }
        dickson.push(next);
    }
    let mut s = vec![BigRational::zero(); k + 1];
    s[0] += p.coeff(k as i64);
    for j in 1..=k {
        let c = p.coeff((k + j) as i64);
        for (i, d) in dickson[j].iter().enumerate() {
            s[i] += &c * d;
        }
    }
    Some(s)
}

fn isolate_trace_roots(p: &LaurentPoly) -> Vec<(BigRational, BigRational)> {
    let Some(s) = trace_polynomial(p) else {
        // not palindromic; Seifert-matrix polynomials always are
        return Vec::new();
    };
    let two = BigRational::from_integer(BigInt::from(2));
    let sturm = sturm_sequence(&s);
    let mut out = Vec::new();
    isolate(&sturm, -&two, two, &mut out);
    out
}

pub(crate) fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().unwrap().is_zero() {
        p.pop();
    }
    p
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = trim(a.to_vec());
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = &r[dr] / &lb;
        for (i, bi) in b.iter().enumerate() {
            r[dr - db + i] -= &c * bi;
        }
        r.pop();
        if r.is_empty() {
            r.push(BigRational::zero());
        }
        r = trim(r);
    }
    r
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![BigRational::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// Sturm sequence of the square-free part is not needed: a Sturm chain of a
/// non-square-free polynomial still counts distinct real roots.
fn sturm_sequence(p: &[BigRational]) -> Vec<Vec<BigRational>> {
    let mut seq = vec![trim(p.to_vec()), trim(derivative(p))];
    loop {
        let n = seq.len();
        if seq[n - 1].len() == 1 && seq[n - 1][0].is_zero() {
            seq.pop();
            break;
        }
        let r = poly_rem(&seq[n - 2], &seq[n - 1]);
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    seq
}

fn sign_changes(seq: &[Vec<BigRational>], x: &BigRational) -> usize {
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| poly_eval(p, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct roots in the half-open interval `(a, b]`.
fn count_roots(seq: &[Vec<BigRational>], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a) - sign_changes(seq, b)
}

fn isolate(
    seq: &[Vec<BigRational>],
    a: BigRational,
    b: BigRational,
    out: &mut Vec<(BigRational, BigRational)>,
) {
    let n = count_roots(seq, &a, &b);
    if n == 0 {
        return;
    }
    let width_ok = (&b - &a) < BigRational::new(BigInt::one(), BigInt::from(1u64 << 20));
    if n == 1 && width_ok {
        out.push((a, b));
        return;
    }
    let mid = (&a + &b) / BigRational::from_integer(BigInt::from(2));
    isolate(seq, a, mid.clone(), out);
    isolate(seq, mid, b, out);
}
