//! Exact arithmetic: Laurent polynomials over `Z`, `Q` and `Z_p`, points of
//! the unit circle with rational angle, cyclotomic fields and certified
//! signatures of hermitian forms over them.

mod circle;
mod cyclotomic;
mod hermitian;
mod laurent;
mod ring;
mod sign;

pub use circle::UnitCirclePoint;
pub use cyclotomic::{cyclotomic_poly, euler_phi, CyclotomicElement, CyclotomicField};
pub use hermitian::{
    characteristic_polynomial, hermitian_signature, hermitian_signature_charpoly, integer_matrix,
    CongruencePivots, CycloMatrix,
};
pub use laurent::LaurentPoly;
pub use ring::{is_prime, prime_power, Ring};
pub use sign::certified_sign;

pub(crate) use ring::rat;
pub(crate) use sign::cos_enclosure;

/// Exact value `p(w)` in `Q(zeta_q)`, `q` the order of `w`.
pub fn eval_at_root(p: &LaurentPoly, w: &UnitCirclePoint) -> CyclotomicElement {
    CyclotomicElement::eval_poly(p, w)
}
