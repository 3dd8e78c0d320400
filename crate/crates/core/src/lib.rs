//! Exact computations for knot concordance obstructions.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactnum`]: Laurent polynomials, cyclotomic fields, certified signs.
//! * [`seifert`]: invariants of a Seifert matrix.
//! * [`descriptor`]: symbolic knots built by sums, mirrors, cables and
//!   infections, with signature and rho-invariant evaluation.
//! * [`blanchfield`]: Alexander modules over `Q[t^+-1]` and `Z_p[t^+-1]`,
//!   Smith normal forms and the Blanchfield pairing.
//! * [`groups`]: presentations, Fox calculus, mixed-coefficient commutator
//!   series.
//! * [`obstruction`]: construction and certification of knot families whose
//!   linear combinations are not `(n.5)`-solvable.

pub mod blanchfield;
pub mod descriptor;
pub mod error;
pub mod exactnum;
pub mod groups;
pub mod obstruction;
pub mod seifert;

pub use error::{Error, Result};

// The README and the guide's snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/signatures.md")]
    mod signatures {}
    #[doc = include_str!("../../../book/src/descriptors.md")]
    mod descriptors {}
    #[doc = include_str!("../../../book/src/blanchfield.md")]
    mod blanchfield {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
}
