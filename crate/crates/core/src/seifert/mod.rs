//! Seifert-matrix invariants: Alexander polynomial, Levine-Tristram
//! signatures, signature step functions and their integrals, Arf invariant.

pub mod catalog;
mod matrix;
mod roots;
mod step;

pub use matrix::{arf_from_alexander, integer_det, SeifertMatrix};
pub use roots::{circle_roots, CircleRoots};
pub use step::{
    signature_function, signature_integral, Arc, Jump, SampledBreak, SampledSignature, StepFunction,
};
