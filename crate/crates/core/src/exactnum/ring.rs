use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient ring of a Laurent polynomial.
///
/// All scalars are carried as [`BigRational`]; the tag decides how results
/// are reduced. Elements of `ModP(p)` are kept as integers in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    Rationals,
    ModP(u64),
}

impl Ring {
    /// Parses `z`, `q`, or `zN` / `modN` / a bare prime.
    pub fn parse(s: &str) -> Result<Ring> {
        let s = s.trim().to_ascii_lowercase();
        let ring = match s.as_str() {
            "z" | "int" | "integers" => Ring::Integers,
            "q" | "rat" | "rationals" => Ring::Rationals,
            _ => {
                let digits = s
                    .strip_prefix("z_")
                    .or_else(|| s.strip_prefix("mod"))
                    .or_else(|| s.strip_prefix('z'))
                    .unwrap_or(&s);
                let p: u64 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown ring `{s}`")))?;
                Ring::mod_p(p)?
            }
        };
        Ok(ring)
    }

    pub fn mod_p(p: u64) -> Result<Ring> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not a prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidInput(format!(
                "prime {p} does not fit the modular arithmetic word"
            )));
        }
        Ok(Ring::ModP(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::ModP(p) => p,
            _ => 0,
        }
    }

    /// Brings an arbitrary rational into canonical form for this ring.
    ///
    /// Panics for `Integers` on a non-integer and for `ModP` when the
    /// denominator is divisible by `p`; both indicate a caller bug.
    pub fn reduce(self, x: BigRational) -> BigRational {
        match self {
            Ring::Rationals => x,
            Ring::Integers => {
                assert!(x.is_integer(), "non-integral value {x} in Z");
                x
            }
            Ring::ModP(p) => {
                let pb = BigInt::from(p);
                let num = x.numer().mod_floor(&pb);
                let den = x.denom().mod_floor(&pb);
                assert!(!den.is_zero(), "denominator divisible by {p}");
                let n = num.to_u64().unwrap();
                let d = den.to_u64().unwrap();
                BigRational::from_integer(BigInt::from(mul_mod(n, inv_mod(d, p), p)))
            }
        }
    }

    /// Whether `x` can be mapped into this ring.
    pub fn admits(self, x: &BigRational) -> bool {
        match self {
            Ring::Rationals => true,
            Ring::Integers => x.is_integer(),
            Ring::ModP(p) => !x.denom().is_multiple_of(&BigInt::from(p)),
        }
    }

    pub fn add(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub fn sub(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }

    pub fn mul(self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub fn neg(self, a: &BigRational) -> BigRational {
        self.reduce(-a)
    }

    pub fn is_unit(self, a: &BigRational) -> bool {
        match self {
            Ring::Integers => a.abs().is_one(),
            _ => !a.is_zero(),
        }
    }

    /// Multiplicative inverse; `None` for zero or non-units of `Z`.
    pub fn inv(self, a: &BigRational) -> Option<BigRational> {
        if !self.is_unit(a) {
            return None;
        }
        Some(match self {
            Ring::Integers | Ring::Rationals => a.recip(),
            Ring::ModP(p) => {
                let v = a.numer().to_u64().unwrap();
                BigRational::from_integer(BigInt::from(inv_mod(v, p)))
            }
        })
    }

    pub fn from_i64(self, v: i64) -> BigRational {
        self.reduce(BigRational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::ModP(p) => write!(f, "Z{p}"),
        }
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, a))` when `n = p^a` with `p` prime and `a >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut m = n;
    let mut a = 0;
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}

pub(crate) fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}
