use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::ring::prime_power;
use crate::error::{Error, Result};

/// The point `exp(2 pi i r / q)` of the unit circle, `0 <= r < q`, `gcd(r, q) = 1`.
///
/// `q` is the multiplicative order of the point; `(1, 0)` is `1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UnitCirclePoint {
    order: u64,
    numer: u64,
}

impl UnitCirclePoint {
    pub const ONE: UnitCirclePoint = UnitCirclePoint { order: 1, numer: 0 };
    pub const MINUS_ONE: UnitCirclePoint = UnitCirclePoint { order: 2, numer: 1 };

    /// `exp(2 pi i r / q)` for arbitrary integer `r`, reduced.
    pub fn new(r: i64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidInput("unit circle point of order 0".into()));
        }
        let r = r.rem_euclid(q as i64) as u64;
        let g = r.gcd(&q);
        Ok(UnitCirclePoint {
            order: q / g,
            numer: r / g,
        })
    }

    /// The primitive `q`-th root `exp(2 pi i / q)`.
    pub fn primitive(q: u64) -> Self {
        Self::new(1, q).unwrap()
    }

    /// Point at the given fraction of a full turn.
    pub fn from_turns(f: Ratio<i64>) -> Self {
        Self::new(*f.numer(), *f.denom() as u64).unwrap()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn numer(&self) -> u64 {
        self.numer
    }

    /// Angle as a fraction of a full turn, in `[0, 1)`.
    pub fn turns(&self) -> Ratio<i64> {
        Ratio::new(self.numer as i64, self.order as i64)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.numer as i64), self.order).unwrap()
    }

    pub fn pow(&self, k: i64) -> Self {
        let r = (self.numer as i128 * k as i128).rem_euclid(self.order as i128);
        Self::new(r as i64, self.order).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let t = self.turns() + other.turns();
        Self::from_turns(t)
    }

    /// Prime-power order `p^a`, `a >= 1`.
    pub fn has_prime_power_order(&self) -> bool {
        prime_power(self.order).is_some()
    }

    /// On the closed upper half `0 <= angle <= pi`.
    pub fn in_upper_half(&self) -> bool {
        2 * self.numer <= self.order
    }

    /// The representative of `{w, conj(w)}` in the upper half.
    pub fn upper_representative(&self) -> Self {
        if self.in_upper_half() {
            *self
        } else {
            self.conj()
        }
    }

    pub fn angle(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.numer as f64 / self.order as f64
    }

    pub fn to_complex_f64(&self) -> (f64, f64) {
        let a = self.angle();
        (a.cos(), a.sin())
    }

    /// All points of order exactly `q`.
    pub fn primitive_roots(q: u64) -> impl Iterator<Item = UnitCirclePoint> {
        (0..q)
            .filter(move |r| r.gcd(&q) == 1)
            .map(move |r| UnitCirclePoint { order: q, numer: r })
    }

    /// All `q`-th roots of unity `exp(2 pi i r / q)`, `r = 0..q`.
    pub fn roots_of_unity(q: u64) -> impl Iterator<Item = UnitCirclePoint> {
        (0..q).map(move |r| UnitCirclePoint::new(r as i64, q).unwrap())
    }
}

impl PartialOrd for UnitCirclePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered by angle in `[0, 2 pi)`.
impl Ord for UnitCirclePoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.turns().cmp(&other.turns())
    }
}

impl fmt::Display for UnitCirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 1 {
            write!(f, "1")
        } else {
            write!(f, "e^(2pi i {}/{})", self.numer, self.order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_and_conjugation() {
        let w = UnitCirclePoint::new(4, 6).unwrap();
        assert_eq!((w.order(), w.numer()), (3, 2));
        assert_eq!(w.conj(), UnitCirclePoint::new(1, 3).unwrap());
        assert_eq!(UnitCirclePoint::new(5, 5).unwrap(), UnitCirclePoint::ONE);
        assert_eq!(UnitCirclePoint::ONE.conj(), UnitCirclePoint::ONE);
        assert_eq!(
            UnitCirclePoint::MINUS_ONE.conj(),
            UnitCirclePoint::MINUS_ONE
        );
    }

    #[test]
    fn powers() {
        let w = UnitCirclePoint::primitive(10);
        assert_eq!(w.pow(5), UnitCirclePoint::MINUS_ONE);
        assert_eq!(w.pow(10), UnitCirclePoint::ONE);
        assert_eq!(w.pow(-1), w.conj());
        assert_eq!(UnitCirclePoint::primitive_roots(12).count(), 4);
    }
}
