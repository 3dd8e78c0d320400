use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{
    rat, CongruencePivots, CycloMatrix, CyclotomicElement, LaurentPoly, Ring, UnitCirclePoint,
};

/// Integer Seifert matrix `A` of even size with `det(A - A^T) = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeifertMatrix {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    matrix: Vec<Vec<i64>>,
}

impl SeifertMatrix {
    pub fn new(matrix: Vec<Vec<i64>>) -> Result<Self> {
        let m = SeifertMatrix { name: None, matrix };
        m.validate()?;
        Ok(m)
    }

    pub fn named(name: impl Into<String>, matrix: Vec<Vec<i64>>) -> Result<Self> {
        let mut m = Self::new(matrix)?;
        m.name = Some(name.into());
        Ok(m)
    }

    pub fn unknot() -> Self {
        SeifertMatrix {
            name: Some("unknot".into()),
            matrix: vec![],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: SeifertMatrix = serde_json::from_str(text)?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    fn validate(&self) -> Result<()> {
        let n = self.matrix.len();
        if self.matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidSeifertMatrix("matrix is not square".into()));
        }
        if n % 2 == 1 {
            return Err(Error::InvalidSeifertMatrix(format!("odd size {n}")));
        }
        let d = integer_det(&self.antisymmetrization());
        if d.abs() != BigInt::one() {
            return Err(Error::InvalidSeifertMatrix(format!(
                "det(A - A^T) = {d}, expected +-1"
            )));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn genus(&self) -> usize {
        self.matrix.len() / 2
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn transpose(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.matrix[j][i]).collect())
            .collect()
    }

    /// `A - A^T`
    pub fn antisymmetrization(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.matrix[i][j] - self.matrix[j][i])
                    .collect()
            })
            .collect()
    }

    /// Block sum; the Seifert matrix of the connected sum.
    pub fn connected_sum(&self, other: &SeifertMatrix) -> SeifertMatrix {
        let (a, b) = (self.size(), other.size());
        let mut m = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            m[i][..a].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..b {
            m[a + i][a..].copy_from_slice(&other.matrix[i]);
        }
        let name = match (&self.name, &other.name) {
            (Some(x), Some(y)) => Some(format!("{x}#{y}")),
            _ => None,
        };
        SeifertMatrix { name, matrix: m }
    }

    /// `-A^T`, a Seifert matrix of the mirror image (the concordance inverse).
    pub fn mirror(&self) -> SeifertMatrix {
        let matrix = self
            .transpose()
            .into_iter()
            .map(|r| r.into_iter().map(|x| -x).collect())
            .collect();
        SeifertMatrix {
            name: self.name.as_ref().map(|n| format!("-{n}")),
            matrix,
        }
    }

    /// `det(t A - A^T)`, Alexander-normalized, coefficients in `ring`.
    pub fn alexander_poly(&self, ring: Ring) -> LaurentPoly {
        let delta = self.alexander_poly_z();
        delta
            .to_ring(ring)
            .expect("integer coefficients map into every ring")
            .alexander_normalized()
    }

    fn alexander_poly_z(&self) -> LaurentPoly {
        let n = self.size();
        if n == 0 {
            return LaurentPoly::one(Ring::Integers);
        }
        // det(kA - A^T) at k = 0..=n, then Lagrange interpolation over Q
        let samples: Vec<(i64, BigInt)> = (0..=n as i64)
            .map(|k| {
                let m: Vec<Vec<i64>> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| k * self.matrix[i][j] - self.matrix[j][i])
                            .collect()
                    })
                    .collect();
                (k, integer_det(&m))
            })
            .collect();
        let mut acc = LaurentPoly::zero(Ring::Rationals);
        for (i, (xi, yi)) in samples.iter().enumerate() {
            let mut basis =
                LaurentPoly::constant(Ring::Rationals, BigRational::from_integer(yi.clone()));
            for (j, (xj, _)) in samples.iter().enumerate() {
                if i != j {
                    let factor = LaurentPoly::from_coeffs(Ring::Rationals, 0, &[-xj, 1]);
                    basis = &basis * &factor;
                    basis = basis.scale(&BigRational::new(BigInt::one(), BigInt::from(xi - xj)));
                }
            }
            acc = &acc + &basis;
        }
        acc.to_ring(Ring::Integers)
            .expect("determinant polynomial has integer coefficients")
            .alexander_normalized()
    }

    /// The hermitian form `(1 - w) A + (1 - conj w) A^T` over `Q(zeta_q)`.
    pub fn tristram_form(&self, w: &UnitCirclePoint) -> CycloMatrix {
        let q = w.order();
        let one = CyclotomicElement::one(q);
        let z = CyclotomicElement::from_point(w);
        let a = &one - &z;
        let b = &one - &z.conj();
        let n = self.size();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &a.scale(&rat(self.matrix[i][j])) + &b.scale(&rat(self.matrix[j][i])))
                    .collect()
            })
            .collect()
    }

    /// Levine-Tristram signature at `w`, the signature of the (possibly
    /// singular) form `(1 - w) A + (1 - conj w) A^T`. Zero at `w = 1`.
    pub fn levine_tristram(&self, w: &UnitCirclePoint) -> i64 {
        if w.is_one() || self.size() == 0 {
            return 0;
        }
        // the form at zeta_q^r is the Galois image of the form at zeta_q
        type Cache = RwLock<HashMap<(Vec<Vec<i64>>, u64), Arc<CongruencePivots>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (self.matrix.clone(), w.order());
        let cached = cache.read().unwrap().get(&key).cloned();
        let pivots = cached.unwrap_or_else(|| {
            let form = self.tristram_form(&UnitCirclePoint::new(1, w.order()).unwrap());
            let p = Arc::new(CongruencePivots::new(&form).expect("the Tristram form is hermitian"));
            cache.write().unwrap().insert(key, p.clone());
            p
        });
        pivots.signature(w.numer() as i64)
    }

    /// `Delta(-1)`, the determinant of the knot up to sign.
    pub fn det_at_minus_one(&self) -> BigInt {
        self.alexander_poly(Ring::Integers)
            .eval(&rat(-1))
            .to_integer()
    }

    /// Arf invariant: 0 iff `Delta(-1) = +-1 mod 8`.
    pub fn arf(&self) -> u8 {
        arf_from_alexander(&self.alexander_poly(Ring::Integers))
    }
}

/// Arf invariant read off from an integral Alexander polynomial.
pub fn arf_from_alexander(delta: &LaurentPoly) -> u8 {
    let v = delta
        .to_ring(Ring::Rationals)
        .unwrap()
        .eval(&rat(-1))
        .to_integer();
    let r = (v % BigInt::from(8) + BigInt::from(8)) % BigInt::from(8);
    let r = r.to_i64().unwrap();
    if r == 1 || r == 7 {
        0
    } else {
        1
    }
}

/// Fraction-free (Bareiss) determinant of an integer matrix.
pub fn integer_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl fmt::Display for SeifertMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    fn figure_eight() -> SeifertMatrix {
        SeifertMatrix::new(vec![vec![1, 1], vec![0, -1]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(SeifertMatrix::new(vec![vec![1]]).is_err());
        assert!(SeifertMatrix::new(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(SeifertMatrix::from_json(r#"{"matrix": [[-1, 1], [0, -1]]}"#).is_ok());
        assert!(SeifertMatrix::from_json(r#"{"name": "x", "matrix": [[0, 2], [0, 0]]}"#).is_err());
    }

    #[test]
    fn alexander_polynomials() {
        assert!(SeifertMatrix::unknot()
            .alexander_poly(Ring::Integers)
            .is_one());
        assert_eq!(
            trefoil().alexander_poly(Ring::Integers),
            LaurentPoly::from_coeffs(Ring::Integers, 0, &[1, -1, 1])
        );
        // t^2 - 3t + 1 has value -1 at t = 1, so the normalized sign flips
        assert_eq!(
            figure_eight().alexander_poly(Ring::Integers),
            LaurentPoly::from_coeffs(Ring::Integers, 0, &[-1, 3, -1])
        );
        assert_eq!(
            trefoil().alexander_poly(Ring::ModP(3)),
            LaurentPoly::from_coeffs(Ring::ModP(3), 0, &[1, 2, 1])
        );
    }

    #[test]
    fn determinant_multiplies_under_sum() {
        let s = trefoil().connected_sum(&figure_eight());
        let prod = &trefoil().alexander_poly(Ring::Integers)
            * &figure_eight().alexander_poly(Ring::Integers);
        assert_eq!(
            s.alexander_poly(Ring::Integers),
            prod.alexander_normalized()
        );
        assert_eq!(
            trefoil().connected_sum(&SeifertMatrix::unknot()).entries(),
            trefoil().entries()
        );
    }

    #[test]
    fn trefoil_signatures() {
        let a = trefoil();
        assert_eq!(a.levine_tristram(&UnitCirclePoint::ONE), 0);
        assert_eq!(a.levine_tristram(&UnitCirclePoint::MINUS_ONE), -2);
        assert_eq!(a.levine_tristram(&UnitCirclePoint::primitive(6)), -1);
        assert_eq!(a.levine_tristram(&UnitCirclePoint::primitive(12)), 0);
        assert_eq!(a.mirror().levine_tristram(&UnitCirclePoint::MINUS_ONE), 2);
    }

    #[test]
    fn arf_invariants() {
        assert_eq!(SeifertMatrix::unknot().arf(), 0);
        assert_eq!(trefoil().arf(), 1);
        assert_eq!(figure_eight().arf(), 1);
        assert_eq!(trefoil().connected_sum(&figure_eight()).arf(), 0);
    }

    #[test]
    fn bareiss() {
        assert_eq!(integer_det(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(
            integer_det(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]),
            BigInt::from(6)
        );
        assert_eq!(
            integer_det(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]),
            BigInt::from(-1)
        );
    }
}
