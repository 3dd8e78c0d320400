//! Finitely presented groups, Fox calculus and mixed-coefficient commutator
//! series at low depth.
//!
//! For a knot group the abelianization is `Z`; mapping the Fox Jacobian
//! through `G -> Z = <t>` gives a presentation of the Alexander module.
//!
//! ```
//! use knotconc::exactnum::Ring;
//! use knotconc::groups::{alexander_from_presentation, GroupPresentation};
//!
//! let m = alexander_from_presentation(&GroupPresentation::trefoil(), Ring::Rationals).unwrap();
//! assert_eq!(m.invariant_factors().last().unwrap().to_string(), "t^2 - t + 1");
//! ```
//!
//! Arbitrary depth is only available for finite groups, by brute force:
//!
//! ```
//! use knotconc::groups::{mixed_series_finite_oracle, CoefficientSequence, FiniteGroup};
//!
//! let s = mixed_series_finite_oracle(&FiniteGroup::symmetric4(), &CoefficientSequence::parse("z,z,z").unwrap());
//! let orders: Vec<usize> = s.iter().map(|h| h.len()).collect();
//! assert_eq!(orders, [24, 12, 4, 1]);
//! ```

mod abelian;
mod finite;
mod fox;
mod presentation;

pub use abelian::{
    abelianization, p1_quotient, relation_matrix, AbelianQuotientData, CoefficientSequence,
};
pub use finite::{mixed_series_finite_oracle, FiniteGroup, Subgroup};
pub use fox::{fox_derivative, GroupRingElement};
pub use presentation::{concat, free_reduce, inverse, GroupPresentation, Word};

use crate::blanchfield::{AlexanderModule, LaurentMatrix};
use crate::error::{Error, Result};
use crate::exactnum::{LaurentPoly, Ring};

/// Exponents of the generators under `G -> Z`, signed so that the first
/// nonzero one is positive.
pub fn exponent_map(p: &GroupPresentation) -> Result<Vec<i64>> {
    let h = abelianization(p);
    if !h.is_infinite_cyclic() {
        return Err(Error::NonCyclicAbelianization(h.to_string()));
    }
    let mut img: Vec<i64> = h.generator_images.iter().map(|v| v[0]).collect();
    if img.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
        img.iter_mut().for_each(|x| *x = -*x);
    }
    Ok(img)
}

/// Image of a group-ring element under `x_g -> t^img[g]`.
pub fn abelianize_element(x: &GroupRingElement, img: &[i64], ring: Ring) -> LaurentPoly {
    LaurentPoly::from_terms(
        ring,
        x.terms().map(|(w, c)| {
            (
                w.iter()
                    .map(|&l| l.signum() as i64 * img[l.unsigned_abs() as usize - 1])
                    .sum(),
                ring.from_i64(c),
            )
        }),
    )
}

/// Alexander module of a knot group over `R[t^+-1]` (`R` a field).
///
/// The module is presented by the transpose of the abelianized Fox Jacobian
/// (generators by relators) with the row of one generator mapping to `t^+-1`
/// removed.
pub fn alexander_from_presentation(p: &GroupPresentation, ring: Ring) -> Result<AlexanderModule> {
    if !ring.is_field() {
        return Err(Error::InvalidInput(format!(
            "Alexander modules are computed over Q or Z_p, got {ring}"
        )));
    }
    let img = exponent_map(p)?;
    let drop = img
        .iter()
        .position(|x| x.abs() == 1)
        .ok_or_else(|| Error::NonCyclicAbelianization("no generator maps to t^+-1".into()))?;
    let m: LaurentMatrix = (1..=p.generators() as i32)
        .filter(|&g| g as usize - 1 != drop)
        .map(|g| {
            p.relators()
                .iter()
                .map(|r| abelianize_element(&fox_derivative(r, g), &img, ring))
                .collect()
        })
        .collect();
    AlexanderModule::new(ring, m)
}
