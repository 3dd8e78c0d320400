//! Symbolic knots built from Seifert-matrix atoms.
//!
//! A [`KnotDescriptor`] is an expression tree closed under connected sum,
//! mirror image, `(r, 1)`-cabling and infection along a curve with linking
//! number zero. Abelian invariants (signatures, Alexander polynomial, Arf
//! invariant, abelian rho-invariants) are evaluated without ever building a
//! Seifert matrix for a cable: `sigma_{K'}(w) = sigma_K(w^r)` and
//! `Delta_{K'}(t) = Delta_K(t^r)`.
//!
//! ```
//! use knotconc::descriptor::{KnotDescriptor, OrderSpec};
//! use knotconc::exactnum::UnitCirclePoint;
//!
//! let k: KnotDescriptor = "cable(2, trefoil)".parse().unwrap();
//! assert_eq!(k.sigma_eval(&UnitCirclePoint::primitive(5)).unwrap(), -2);
//! assert_eq!(k.rho_abelian(OrderSpec::Infinite).unwrap().to_string(), "-4/3");
//! ```

mod parse;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{eval_at_root, LaurentPoly, Ring, UnitCirclePoint};
use crate::seifert::{
    arf_from_alexander, catalog, signature_function, SeifertMatrix, StepFunction,
};

pub use parse::parse_with;

/// Order `d` of the image of the infection curve: a positive integer or
/// infinity (the coefficient group is then `Z`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderSpec {
    Finite(u64),
    Infinite,
}

impl OrderSpec {
    pub fn finite(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidInput("order must be at least 1".into()));
        }
        Ok(OrderSpec::Finite(d))
    }
}

impl FromStr for OrderSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinite" | "infinity" | "∞" => Ok(OrderSpec::Infinite),
            t => {
                let d: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad order `{t}`")))?;
                OrderSpec::finite(d)
            }
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::Finite(d) => write!(f, "{d}"),
            OrderSpec::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotDescriptor {
    Atom(SeifertMatrix),
    Sum(Vec<KnotDescriptor>),
    Mirror(Box<KnotDescriptor>),
    /// `(r, 1)`-cable, `r >= 1`
    Cable(u64, Box<KnotDescriptor>),
    /// `carrier(eta, infected)`; `depth` is the declared derived-series depth
    /// of the curve `eta`, whose linking number with the carrier is zero.
    Infection {
        carrier: Box<KnotDescriptor>,
        depth: u32,
        infected: Box<KnotDescriptor>,
    },
}

impl KnotDescriptor {
    /// Catalog atom by name.
    pub fn atom(name: &str) -> Result<Self> {
        Ok(KnotDescriptor::Atom(catalog::lookup(name)?))
    }

    pub fn unknot() -> Self {
        KnotDescriptor::Atom(SeifertMatrix::unknot())
    }

    pub fn sum(parts: Vec<KnotDescriptor>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidInput("empty connected sum".into()));
        }
        Ok(KnotDescriptor::Sum(parts))
    }

    pub fn mirror(k: KnotDescriptor) -> Self {
        KnotDescriptor::Mirror(Box::new(k))
    }

    pub fn cable(r: u64, k: KnotDescriptor) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput(
                "cable parameter must be at least 1".into(),
            ));
        }
        Ok(KnotDescriptor::Cable(r, Box::new(k)))
    }

    pub fn infect(carrier: KnotDescriptor, depth: u32, infected: KnotDescriptor) -> Self {
        KnotDescriptor::Infection {
            carrier: Box::new(carrier),
            depth,
            infected: Box::new(infected),
        }
    }

    /// Textual expression in the descriptor grammar.
    pub fn to_expr(&self) -> String {
        self.to_string()
    }

    pub fn contains_infection(&self) -> bool {
        match self {
            KnotDescriptor::Atom(_) => false,
            KnotDescriptor::Sum(v) => v.iter().any(|k| k.contains_infection()),
            KnotDescriptor::Mirror(k) | KnotDescriptor::Cable(_, k) => k.contains_infection(),
            KnotDescriptor::Infection { .. } => true,
        }
    }

    /// Number of nested infection levels along the carrier spine.
    pub fn infection_nesting(&self) -> usize {
        match self {
            KnotDescriptor::Infection { infected, .. } => 1 + infected.infection_nesting(),
            _ => 0,
        }
    }

    /// Seifert matrix, when the tree only uses atoms, sums and mirrors.
    pub fn seifert_matrix(&self) -> Result<SeifertMatrix> {
        match self {
            KnotDescriptor::Atom(a) => Ok(a.clone()),
            KnotDescriptor::Sum(v) => {
                let mut acc = SeifertMatrix::unknot();
                for k in v {
                    acc = acc.connected_sum(&k.seifert_matrix()?);
                }
                Ok(acc)
            }
            KnotDescriptor::Mirror(k) => Ok(k.seifert_matrix()?.mirror()),
            KnotDescriptor::Cable(..) => Err(Error::UnsupportedNode(
                "cable has no stored Seifert matrix".into(),
            )),
            KnotDescriptor::Infection { .. } => Err(Error::UnsupportedNode(
                "infection has no stored Seifert matrix".into(),
            )),
        }
    }

    /// Levine-Tristram signature at `w`.
    ///
    /// At a cable node the value is `sigma(w^r)` of the companion. This is
    /// unconditional when `w` has prime-power order; otherwise `w^r` must not
    /// be a root of the companion's Alexander polynomial, and the point is
    /// refused as exceptional if it is.
    pub fn sigma_eval(&self, w: &UnitCirclePoint) -> Result<i64> {
        if w.is_one() {
            return Ok(0);
        }
        match self {
            KnotDescriptor::Atom(a) => Ok(a.levine_tristram(w)),
            KnotDescriptor::Sum(v) => v.iter().map(|k| k.sigma_eval(w)).sum(),
            KnotDescriptor::Mirror(k) => Ok(-k.sigma_eval(w)?),
            KnotDescriptor::Cable(r, k) => {
                let wr = w.pow(*r as i64);
                if !w.has_prime_power_order() {
                    let delta = k.abelian_alexander()?;
                    if eval_at_root(&delta, &wr).is_zero() {
                        return Err(Error::ExceptionalPoint {
                            point: w.to_string(),
                            detail: format!("{wr} is a root of the Alexander polynomial of {k}"),
                        });
                    }
                }
                k.sigma_eval(&wr)
            }
            KnotDescriptor::Infection { carrier, .. } => carrier.sigma_eval(w),
        }
    }

    /// Alexander polynomial, normalized, coefficients in `ring`.
    pub fn alex_eval(&self, ring: Ring) -> Result<LaurentPoly> {
        if self.contains_infection() {
            return Err(Error::UnsupportedNode(format!(
                "alexander polynomial of infection `{self}`"
            )));
        }
        Ok(self
            .abelian_alexander()?
            .to_ring(ring)?
            .alexander_normalized())
    }

    /// Integral Alexander polynomial with infections read through to their
    /// carriers (valid because the curve has linking number zero).
    fn abelian_alexander(&self) -> Result<LaurentPoly> {
        let p = match self {
            KnotDescriptor::Atom(a) => a.alexander_poly(Ring::Integers),
            KnotDescriptor::Sum(v) => {
                let mut acc = LaurentPoly::one(Ring::Integers);
                for k in v {
                    acc = &acc * &k.abelian_alexander()?;
                }
                acc
            }
            KnotDescriptor::Mirror(k) => k.abelian_alexander()?.conj(),
            KnotDescriptor::Cable(r, k) => k.abelian_alexander()?.substitute_power(*r as i64),
            KnotDescriptor::Infection { carrier, .. } => carrier.abelian_alexander()?,
        };
        Ok(p.alexander_normalized())
    }

    /// Arf invariant from `Delta(-1)`.
    pub fn arf(&self) -> Result<u8> {
        Ok(arf_from_alexander(&self.abelian_alexander()?))
    }

    /// `|Delta(-1)|`
    pub fn determinant(&self) -> Result<BigInt> {
        let minus_one = BigRational::from_integer(BigInt::from(-1));
        Ok(self
            .abelian_alexander()?
            .eval(&minus_one)
            .to_integer()
            .magnitude()
            .clone()
            .into())
    }

    /// Full signature function.
    pub fn signature_step(&self) -> Result<StepFunction> {
        match self {
            KnotDescriptor::Atom(a) => signature_function(a),
            KnotDescriptor::Sum(v) => {
                let mut acc = StepFunction::zero();
                for k in v {
                    acc = acc.add(&k.signature_step()?);
                }
                Ok(acc)
            }
            KnotDescriptor::Mirror(k) => Ok(k.signature_step()?.neg()),
            KnotDescriptor::Cable(r, k) => Ok(k.signature_step()?.pullback(*r)),
            KnotDescriptor::Infection { .. } => Err(Error::UnsupportedNode(format!(
                "signature function of infection `{self}`"
            ))),
        }
    }

    /// Abelian rho-invariant: `sum_{r<d} sigma(e^{2 pi i r/d})`, or the
    /// normalized integral of the signature function when `d` is infinite.
    pub fn rho_abelian(&self, d: OrderSpec) -> Result<BigRational> {
        match d {
            OrderSpec::Finite(d) => {
                let mut acc = 0i64;
                for w in UnitCirclePoint::roots_of_unity(d) {
                    acc += self.sigma_eval(&w)?;
                }
                Ok(BigRational::from_integer(BigInt::from(acc)))
            }
            OrderSpec::Infinite => Ok(self.signature_step()?.integral()),
        }
    }
}

/// Rho-invariant of `carrier(eta, j)` for a coefficient system on which the
/// curve `eta` has order `eta_order`: by the satellite formula it is the abelian
/// rho-invariant of `j`. The carrier is assumed slice; only `Arf(j) = 0` is
/// checked.
pub fn infection_rho(
    carrier: &KnotDescriptor,
    eta_order: OrderSpec,
    j: &KnotDescriptor,
) -> Result<BigRational> {
    let _ = carrier;
    if j.arf()? != 0 {
        return Err(Error::ArfNonzero);
    }
    j.rho_abelian(eta_order)
}

impl fmt::Display for KnotDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotDescriptor::Atom(a) => write!(f, "{}", a.name.as_deref().unwrap_or("<matrix>")),
            KnotDescriptor::Sum(v) => {
                write!(f, "sum(")?;
                for (i, k) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, ")")
            }
            KnotDescriptor::Mirror(k) => write!(f, "mirror({k})"),
            KnotDescriptor::Cable(r, k) => write!(f, "cable({r}, {k})"),
            KnotDescriptor::Infection {
                carrier,
                depth,
                infected,
            } => write!(f, "infect({carrier}, eta{depth}, {infected})"),
        }
    }
}

impl FromStr for KnotDescriptor {
    type Err = Error;

    /// Atoms resolve against the catalog; names ending in `.json` are read as
    /// Seifert matrix files.
    fn from_str(s: &str) -> Result<Self> {
        parse_with(s, &mut default_resolver)
    }
}

/// Catalog lookup, or a Seifert-matrix JSON file for names ending in `.json`.
pub fn default_resolver(name: &str) -> Result<SeifertMatrix> {
    if name.ends_with(".json") {
        let text = std::fs::read_to_string(name)?;
        let mut m = SeifertMatrix::from_json(&text)?;
        if m.name.is_none() {
            m.name = Some(name.to_string());
        }
        return Ok(m);
    }
    catalog::lookup(name)
}

impl Serialize for KnotDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_expr())
    }
}

impl<'de> Deserialize<'de> for KnotDescriptor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(s: &str) -> KnotDescriptor {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cable_signatures() {
        let c5 = k("cable(5, trefoil)");
        assert_eq!(c5.sigma_eval(&UnitCirclePoint::primitive(5)).unwrap(), 0);
        let c2 = k("cable(2, trefoil)");
        assert_eq!(c2.sigma_eval(&UnitCirclePoint::primitive(5)).unwrap(), -2);
        let s = k("sum(trefoil, mirror(trefoil))");
        for q in [3, 5, 7, 8, 9] {
            assert_eq!(s.sigma_eval(&UnitCirclePoint::primitive(q)).unwrap(), 0);
        }
    }

    #[test]
    fn exceptional_points_are_refused() {
        // w^2 = e^{i pi/3} for w of order 12, a root of the trefoil polynomial
        let c = k("cable(2, trefoil)");
        let w = UnitCirclePoint::new(1, 12).unwrap();
        assert!(matches!(
            c.sigma_eval(&w),
            Err(Error::ExceptionalPoint { .. })
        ));
        // order 10 is not a prime power but w^2 is no root
        assert_eq!(
            c.sigma_eval(&UnitCirclePoint::primitive(10)).unwrap(),
            k("trefoil")
                .sigma_eval(&UnitCirclePoint::primitive(5))
                .unwrap()
        );
    }

    #[test]
    fn alexander_polynomials() {
        let c = k("cable(2, trefoil)");
        assert_eq!(
            c.alex_eval(Ring::Integers).unwrap(),
            LaurentPoly::from_coeffs(Ring::Integers, 0, &[1, 0, -1, 0, 1])
        );
        let m = k("mirror(figure8)");
        assert_eq!(
            m.alex_eval(Ring::Integers).unwrap(),
            k("figure8").alex_eval(Ring::Integers).unwrap()
        );
        assert!(k("unknot").alex_eval(Ring::Rationals).unwrap().is_one());
        assert!(matches!(
            k("infect(metabolic, eta0, trefoil)").alex_eval(Ring::Integers),
            Err(Error::UnsupportedNode(_))
        ));
    }

    #[test]
    fn rho_invariants() {
        let t = k("trefoil");
        assert_eq!(t.rho_abelian(OrderSpec::Finite(1)).unwrap(), q(0, 1));
        assert_eq!(t.rho_abelian(OrderSpec::Finite(6)).unwrap(), q(-8, 1));
        assert_eq!(t.rho_abelian(OrderSpec::Infinite).unwrap(), q(-4, 3));
        let c = k("cable(3, trefoil)");
        assert_eq!(c.signature_step().unwrap().breakpoints().len(), 3);
        assert_eq!(c.rho_abelian(OrderSpec::Infinite).unwrap(), q(-4, 3));
    }

    #[test]
    fn infection_rho_checks_arf() {
        let carrier = k("metabolic");
        assert!(matches!(
            infection_rho(&carrier, OrderSpec::Finite(6), &k("trefoil")),
            Err(Error::ArfNonzero)
        ));
        let j = k("sum(trefoil, trefoil)");
        assert_eq!(
            infection_rho(&carrier, OrderSpec::Finite(1), &j).unwrap(),
            q(0, 1)
        );
        assert_eq!(
            infection_rho(&carrier, OrderSpec::Finite(6), &j).unwrap(),
            q(-16, 1)
        );
    }

    #[test]
    fn cable_arf() {
        assert_eq!(k("cable(2, trefoil)").arf().unwrap(), 0);
        assert_eq!(k("cable(3, trefoil)").arf().unwrap(), 1);
    }

    #[test]
    fn order_spec_parsing() {
        assert_eq!("inf".parse::<OrderSpec>().unwrap(), OrderSpec::Infinite);
        assert_eq!("12".parse::<OrderSpec>().unwrap(), OrderSpec::Finite(12));
        assert!("0".parse::<OrderSpec>().is_err());
    }
}
