use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use super::ring::{rat, Ring};
use crate::error::{Error, Result};

/// Laurent polynomial in one variable `t` over a [`Ring`].
///
/// Coefficients are stored sparsely; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero(ring: Ring) -> Self {
        LaurentPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: Ring) -> Self {
        Self::monomial(ring, BigRational::one(), 0)
    }

    /// `t`
    pub fn var(ring: Ring) -> Self {
        Self::monomial(ring, BigRational::one(), 1)
    }

    pub fn monomial(ring: Ring, c: BigRational, e: i64) -> Self {
        Self::from_terms(ring, [(e, c)])
    }

    pub fn constant(ring: Ring, c: BigRational) -> Self {
        Self::monomial(ring, c, 0)
    }

    pub fn from_terms(ring: Ring, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut map: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (e, c) in terms {
            let entry = map.entry(e).or_insert_with(BigRational::zero);
            *entry = ring.add(entry, &c);
        }
        map.retain(|_, c| !c.is_zero());
        LaurentPoly { ring, terms: map }
    }

    /// Coefficients `c[0] t^low + c[1] t^(low+1) + ...`.
    pub fn from_coeffs(ring: Ring, low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (low + i as i64, rat(c))),
        )
    }

    pub fn from_rational_coeffs(ring: Ring, low: i64, coeffs: &[BigRational]) -> Self {
        Self::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (low + i as i64, c.clone())),
        )
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i64) -> BigRational {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// Units of `R[t, t^-1]` are `c t^k` with `c` a unit of `R`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.ring.is_unit(self.terms.values().next().unwrap())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn low_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `high - low`, the degree of the polynomial part after clearing `t`.
    pub fn span(&self) -> usize {
        match (self.low_exp(), self.high_exp()) {
            (Some(l), Some(h)) => (h - l) as usize,
            _ => 0,
        }
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .values()
            .next_back()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn trailing_coeff(&self) -> BigRational {
        self.terms
            .values()
            .next()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn max_abs_coeff(&self) -> BigRational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.ring, self.terms.iter().map(|(&e, a)| (e, a * c)))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// Substitution `t -> t^r`; `r = -1` is the involution `t -> t^-1`.
    pub fn substitute_power(&self, r: i64) -> Self {
        assert!(
            r != 0,
            "substitution t -> t^0 is not a ring endomorphism of interest"
        );
        LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e * r, c.clone()))
                .collect(),
        }
    }

    /// The involution `t -> t^-1`.
    pub fn conj(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn pow(&self, mut n: u32) -> Self {
        let mut acc = Self::one(self.ring);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (&e, c) in &self.terms {
            let xe = if e >= 0 {
                num_traits::pow(x.clone(), e as usize)
            } else {
                num_traits::pow(x.recip(), (-e) as usize)
            };
            acc += c * xe;
        }
        self.ring.reduce(acc)
    }

    /// Maps the coefficients into another ring (`Z -> Q`, `Z -> Z_p`, ...).
    pub fn to_ring(&self, ring: Ring) -> Result<Self> {
        if let Some((_, c)) = self.terms.iter().find(|(_, c)| !ring.admits(c)) {
            return Err(Error::InvalidInput(format!(
                "coefficient {c} does not map into {ring}"
            )));
        }
        if let (Ring::ModP(p), Ring::ModP(q)) = (self.ring, ring) {
            if p != q {
                return Err(Error::InvalidInput(format!(
                    "cannot map Z{p} coefficients into Z{q}"
                )));
            }
        }
        Ok(Self::from_terms(
            ring,
            self.terms.iter().map(|(&e, c)| (e, c.clone())),
        ))
    }

    /// Canonical representative up to units `a t^n`.
    ///
    /// Over `Z` and `Q`: lowest exponent 0 and positive value at `t = 1`
    /// (positive leading coefficient if `t = 1` is a root). Over `Z_p`: lowest
    /// exponent 0 and monic.
    pub fn alexander_normalized(&self) -> Self {
        let Some(low) = self.low_exp() else {
            return self.clone();
        };
        let shifted = self.shift(-low);
        match self.ring {
            Ring::ModP(_) => shifted.monic(),
            _ => {
                let at_one = shifted.eval(&BigRational::one());
                let negative = if at_one.is_zero() {
                    shifted.leading_coeff().is_negative()
                } else {
                    at_one.is_negative()
                };
                if negative {
                    -&shifted
                } else {
                    shifted
                }
            }
        }
    }

    pub fn is_alexander_normalized(&self) -> bool {
        *self == self.alexander_normalized()
    }

    /// Lowest exponent 0 and leading coefficient 1; requires a field.
    pub fn monic(&self) -> Self {
        assert!(
            self.ring.is_field(),
            "monic associate needs field coefficients"
        );
        let Some(low) = self.low_exp() else {
            return self.clone();
        };
        let lc = self.ring.inv(&self.leading_coeff()).unwrap();
        self.shift(-low).scale(&lc)
    }

    /// Euclidean division of polynomials (no negative exponents) over a field.
    pub fn div_rem(&self, d: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(self.ring.is_field() && self.ring == d.ring);
        assert!(!d.is_zero(), "division by zero polynomial");
        assert!(
            self.low_exp().unwrap_or(0) >= 0 && d.low_exp().unwrap() >= 0,
            "div_rem expects polynomials"
        );
        let ring = self.ring;
        let dh = d.high_exp().unwrap();
        let inv_lc = ring.inv(&d.leading_coeff()).unwrap();
        let mut q = BTreeMap::new();
        let mut r = self.clone();
        while let Some(rh) = r.high_exp() {
            if rh < dh {
                break;
            }
            let c = ring.mul(&r.leading_coeff(), &inv_lc);
            let e = rh - dh;
            r = &r - &d.shift(e).scale(&c);
            q.insert(e, c);
        }
        (LaurentPoly { ring, terms: q }, r)
    }

    pub fn rem(&self, d: &LaurentPoly) -> LaurentPoly {
        self.div_rem(d).1
    }

    /// Exact quotient in the Laurent ring, `None` if `d` does not divide.
    pub fn exact_div(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (sl, dl) = (self.low_exp().unwrap(), d.low_exp()?);
        let (q, r) = self.shift(-sl).div_rem(&d.shift(-dl));
        r.is_zero().then(|| q.shift(sl - dl))
    }

    pub fn divides(&self, other: &LaurentPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Monic greatest common divisor in the Laurent ring over a field.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let strip = |p: &LaurentPoly| match p.low_exp() {
            Some(l) => p.shift(-l),
            None => p.clone(),
        };
        let (mut a, mut b) = (strip(self), strip(other));
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = strip(&r);
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// `(g, s, u)` with `s*self + u*other = g`, `g` monic; polynomial inputs.
    pub fn ext_gcd(&self, other: &LaurentPoly) -> (LaurentPoly, LaurentPoly, LaurentPoly) {
        let ring = self.ring;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(ring), Self::zero(ring));
        let (mut u0, mut u1) = (Self::zero(ring), Self::one(ring));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let u2 = &u0 - &(&q * &u1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            u0 = std::mem::replace(&mut u1, u2);
        }
        if r0.is_zero() {
            return (r0, s0, u0);
        }
        let inv = ring.inv(&r0.leading_coeff()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), u0.scale(&inv))
    }

    /// Inverse of `self` modulo the polynomial `m`, if coprime.
    pub fn inv_mod(&self, m: &LaurentPoly) -> Option<LaurentPoly> {
        let low = self.low_exp()?;
        let mut base = self.shift(-low).rem(m);
        let (g, s, _) = base.ext_gcd(m);
        if !g.is_one() {
            return None;
        }
        base = s.rem(m);
        if low == 0 {
            return Some(base);
        }
        // t^-low mod m
        let tinv = LaurentPoly::var(self.ring).ext_gcd(m);
        if !tinv.0.is_one() {
            return None;
        }
        let tpow = if low > 0 {
            tinv.1.rem(m).pow(low as u32)
        } else {
            LaurentPoly::var(self.ring).pow((-low) as u32)
        };
        Some((&base * &tpow).rem(m))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let low = self.low_exp().unwrap_or(0);
        let high = self.high_exp().unwrap_or(-1);
        let coeffs: Vec<String> = (low..=high).map(|e| self.coeff(e).to_string()).collect();
        json!({ "ring": self.ring.to_string(), "lowest_exponent": low, "coefficients": coeffs, "text": self.to_string() })
    }

    /// Integer coefficients; `None` if some coefficient is not integral.
    pub fn integer_coeffs(&self) -> Option<Vec<(i64, BigInt)>> {
        self.terms
            .iter()
            .map(|(&e, c)| c.is_integer().then(|| (e, c.to_integer())))
            .collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        LaurentPoly::from_terms(
            self.ring,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(&e, c)| (e, c.clone())),
        )
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::from_terms(self.ring, self.terms.iter().map(|(&e, c)| (e, -c)))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut acc: BTreeMap<i64, BigRational> = BTreeMap::new();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                *acc.entry(e1 + e2).or_insert_with(BigRational::zero) += c1 * c2;
            }
        }
        LaurentPoly::from_terms(self.ring, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
