//! Fox free differential calculus.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::presentation::{concat, free_reduce, Word};

/// Element of the integral group ring of a free group: reduced words with
/// nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(&[])
    }

    pub fn word(w: &[i32]) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(free_reduce(w), 1);
        GroupRingElement { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, w: Word, c: i64) {
        let e = self.terms.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.terms.retain(|_, v| *v != 0);
        }
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                out.add_term(concat(a, b), x * y);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let word = if w.is_empty() {
                "1".to_string()
            } else {
                w.iter()
                    .map(|&x| {
                        if x > 0 {
                            format!("x{x}")
                        } else {
                            format!("x{}^-1", -x)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if c.abs() != 1 {
                write!(f, "{} ", c.abs())?;
            }
            write!(f, "{word}")?;
        }
        Ok(())
    }
}

/// `d w / d x_g` (generator `g` is 1-based).
///
/// Reading `w` left to right, an occurrence of `x_g` contributes the prefix
/// before it and an occurrence of `x_g^-1` contributes minus the prefix
/// including it.
pub fn fox_derivative(w: &[i32], g: i32) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (k, &x) in w.iter().enumerate() {
        if x == g {
            out.add_term(free_reduce(&w[..k]), 1);
        } else if x == -g {
            out.add_term(free_reduce(&w[..=k]), -1);
        }
    }
    out
}
