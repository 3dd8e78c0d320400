use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use serde_json::json;

use crate::exactnum::{LaurentPoly, Ring};

/// An element of `Frac(R[t^+-1]) / R[t^+-1]`.
///
/// Stored canonically as `num / den` with `den` monic, constant term nonzero,
/// `gcd(num, den) = 1` and `num` a polynomial of degree below `deg den`. The
/// zero class is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlanchfieldValue {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl BlanchfieldValue {
    pub fn zero(ring: Ring) -> Self {
        BlanchfieldValue {
            num: LaurentPoly::zero(ring),
            den: LaurentPoly::one(ring),
        }
    }

    /// The class of `num / den`; `den` must be nonzero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        let ring = den.ring();
        assert!(!den.is_zero(), "zero denominator");
        let low = den.low_exp().unwrap();
        let lc_inv = ring.inv(&den.leading_coeff()).expect("field coefficients");
        let den = den.monic();
        let num = num.shift(-low).scale(&lc_inv);
        if num.is_zero() {
            return Self::zero(ring);
        }
        let g = num.gcd(&den);
        let num = num.exact_div(&g).expect("gcd divides");
        let den = den.exact_div(&g).expect("gcd divides");
        if den.is_one() {
            return Self::zero(ring);
        }
        let num = reduce_mod(&num, &den);
        if num.is_zero() {
            return Self::zero(ring);
        }
        BlanchfieldValue { num, den }
    }

    pub fn ring(&self) -> Ring {
        self.den.ring()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Image under `t -> t^-1`.
    pub fn conj(&self) -> Self {
        Self::new(self.num.conj(), self.den.conj())
    }

    /// `f * self`.
    pub fn times(&self, f: &LaurentPoly) -> Self {
        Self::new(&self.num * f, self.den.clone())
    }

    /// Coefficients of `num * (d / den) mod d` in `1, t, ..., t^(deg d - 1)`,
    /// identifying the class with an element of `R[t]/(d)`; `den` must divide
    /// `d`.
    pub fn coordinates_over(&self, d: &LaurentPoly) -> Vec<BigRational> {
        let d = d.monic();
        let cof = d
            .exact_div(&self.den)
            .expect("denominator divides the modulus");
        let r = reduce_mod(&(&self.num * &cof), &d);
        (0..d.span() as i64).map(|e| r.coeff(e)).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "numerator": self.num.to_json(), "denominator": self.den.to_json(), "text": self.to_string() })
    }
}

/// Polynomial representative of `x mod m` (negative powers of `t` are
/// inverted modulo `m`).
fn reduce_mod(x: &LaurentPoly, m: &LaurentPoly) -> LaurentPoly {
    let Some(low) = x.low_exp() else {
        return x.clone();
    };
    let base = x.shift(-low).rem(m);
    if low >= 0 {
        return (&base * &LaurentPoly::var(x.ring()).pow(low as u32)).rem(m);
    }
    let tinv = LaurentPoly::var(x.ring())
        .inv_mod(m)
        .expect("t is a unit modulo a polynomial with nonzero constant term");
    (&base * &tinv.pow((-low) as u32)).rem(m)
}

impl Add for &BlanchfieldValue {
    type Output = BlanchfieldValue;
    fn add(self, rhs: &BlanchfieldValue) -> BlanchfieldValue {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        BlanchfieldValue::new(num, &self.den * &rhs.den)
    }
}

impl Neg for &BlanchfieldValue {
    type Output = BlanchfieldValue;
    fn neg(self) -> BlanchfieldValue {
        BlanchfieldValue::new(-&self.num, self.den.clone())
    }
}

impl Sub for &BlanchfieldValue {
    type Output = BlanchfieldValue;
    fn sub(self, rhs: &BlanchfieldValue) -> BlanchfieldValue {
        self + &(-rhs)
    }
}

impl fmt::Display for BlanchfieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
