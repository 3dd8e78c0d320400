//! Alexander modules over `R[t^+-1]` (`R = Q` or `Z_p`) and the classical
//! Blanchfield pairing.
//!
//! The module of a Seifert matrix `A` is presented by `tA - A^T`. The pairing
//! is realized as
//!
//! ```text
//! Bl(x, y) = (1 - t) * conj(x)^T (tA - A^T)^-1 y   in  Frac(R[t^+-1]) / R[t^+-1],
//! ```
//!
//! where `conj` sends `t` to `t^-1`. All computations go through a Smith
//! normal form of the presentation.
//!
//! ```
//! use knotconc::blanchfield::AlexanderModule;
//! use knotconc::exactnum::Ring;
//! use knotconc::seifert::catalog;
//!
//! let m = AlexanderModule::from_seifert(&catalog::lookup("trefoil").unwrap(), Ring::mod_p(3).unwrap()).unwrap();
//! let f = m.invariant_factors();
//! assert_eq!(f.len(), 1);
//! assert_eq!(f[0].to_string(), "t^2 + 2t + 1");
//! ```

mod smith;
mod value;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::json;

use crate::error::{Error, Result};
use crate::exactnum::{LaurentPoly, Ring};
use crate::seifert::SeifertMatrix;

pub use smith::{identity, laurent_div_rem, mat_mul, smith_normal_form, LaurentMatrix, SmithForm};
pub use value::BlanchfieldValue;

pub type LaurentVector = Vec<LaurentPoly>;

/// Finitely presented module `R[t^+-1]^rows / (column space of M)`.
#[derive(Clone, Debug)]
pub struct AlexanderModule {
    ring: Ring,
    presentation: LaurentMatrix,
    smith: SmithForm,
}

impl AlexanderModule {
    pub fn new(ring: Ring, presentation: LaurentMatrix) -> Result<Self> {
        let smith = smith_normal_form(&presentation, ring)?;
        Ok(AlexanderModule {
            ring,
            presentation,
            smith,
        })
    }

    /// Module presented by `tA - A^T`.
    pub fn from_seifert(a: &SeifertMatrix, ring: Ring) -> Result<Self> {
        AlexanderModule::new(ring, seifert_presentation(a, ring)?)
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn presentation(&self) -> &LaurentMatrix {
        &self.presentation
    }

    pub fn smith(&self) -> &SmithForm {
        &self.smith
    }

    /// Number of generators of the presentation.
    pub fn rank_of_generators(&self) -> usize {
        self.presentation.len()
    }

    /// Diagonal of the Smith form, padded with zeros to one entry per
    /// generator (rows beyond the column count are free summands).
    fn diagonal(&self) -> Vec<LaurentPoly> {
        let mut d = self.smith.d.clone();
        d.resize(self.presentation.len(), LaurentPoly::zero(self.ring));
        d
    }

    /// Indices of the nontrivial cyclic summands.
    fn summand_indices(&self) -> Vec<usize> {
        self.diagonal()
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_unit())
            .map(|(i, _)| i)
            .collect()
    }

    /// Nonunit invariant factors `d_1 | d_2 | ...`; zero entries stand for
    /// free summands.
    pub fn invariant_factors(&self) -> Vec<LaurentPoly> {
        let d = self.diagonal();
        self.summand_indices()
            .into_iter()
            .map(|i| d[i].clone())
            .collect()
    }

    pub fn free_rank(&self) -> usize {
        self.diagonal().iter().filter(|x| x.is_zero()).count()
    }

    pub fn is_trivial(&self) -> bool {
        self.summand_indices().is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.summand_indices().len() <= 1
    }

    /// Product of the invariant factors, `None` when the module is not torsion.
    pub fn order(&self) -> Option<LaurentPoly> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(
            self.invariant_factors()
                .iter()
                .fold(LaurentPoly::one(self.ring), |acc, d| &acc * d),
        )
    }

    /// Dimension over `R`, when the module is torsion.
    pub fn dimension(&self) -> Option<usize> {
        self.order().map(|o| o.span())
    }

    /// Coordinates of `x` in the Smith basis: `U^-1 x`.
    pub fn smith_coordinates(&self, x: &[LaurentPoly]) -> Result<LaurentVector> {
        self.check_vector(x)?;
        Ok(mat_vec(&self.smith.u_inv, x, self.ring))
    }

    /// The generator of the `i`-th Smith summand in the original coordinates
    /// (column `i` of `U`).
    pub fn smith_generator(&self, i: usize) -> LaurentVector {
        self.smith.u.iter().map(|row| row[i].clone()).collect()
    }

    /// Generators of the nontrivial summands, in the original coordinates.
    pub fn generators(&self) -> Vec<LaurentVector> {
        self.summand_indices()
            .into_iter()
            .map(|i| self.smith_generator(i))
            .collect()
    }

    fn check_vector(&self, x: &[LaurentPoly]) -> Result<()> {
        if x.len() != self.presentation.len() {
            return Err(Error::InvalidInput(format!(
                "vector has {} entries, module has {} generators",
                x.len(),
                self.presentation.len()
            )));
        }
        if x.iter().any(|c| c.ring() != self.ring) {
            return Err(Error::InvalidInput(format!(
                "vector is not over {}",
                self.ring
            )));
        }
        Ok(())
    }

    /// Whether the class of `x` generates the module.
    pub fn generates(&self, x: &[LaurentPoly]) -> Result<bool> {
        let idx = self.summand_indices();
        match idx.as_slice() {
            [] => Ok(true),
            [i] => {
                let y = self.smith_coordinates(x)?;
                Ok(y[*i].gcd(&self.diagonal()[*i]).is_one())
            }
            _ => Ok(false),
        }
    }

    /// Whether `x` is zero in the module.
    pub fn is_zero_class(&self, x: &[LaurentPoly]) -> Result<bool> {
        let y = self.smith_coordinates(x)?;
        let d = self.diagonal();
        Ok(y.iter().zip(&d).all(|(c, di)| {
            if di.is_zero() {
                c.is_zero()
            } else {
                di.divides(c)
            }
        }))
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "ring": self.ring.to_string(),
            "generators": self.presentation.len(),
            "relations": self.presentation.first().map_or(0, |r| r.len()),
            "free_rank": self.free_rank(),
            "invariant_factors": self.invariant_factors().iter().map(|p| p.to_json()).collect::<Vec<_>>(),
        })
    }
}

fn mat_vec(m: &LaurentMatrix, x: &[LaurentPoly], ring: Ring) -> LaurentVector {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(LaurentPoly::zero(ring), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

/// `tA - A^T` over `ring[t^+-1]`.
pub fn seifert_presentation(a: &SeifertMatrix, ring: Ring) -> Result<LaurentMatrix> {
    if !ring.is_field() {
        return Err(Error::InvalidInput(format!(
            "Alexander modules are computed over Q or Z_p, not {ring}"
        )));
    }
    let e = a.entries();
    let n = a.size();
    Ok((0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    LaurentPoly::from_terms(
                        ring,
                        [(1, ring.from_i64(e[i][j])), (0, ring.from_i64(-e[j][i]))],
                    )
                })
                .collect()
        })
        .collect())
}

/// The Alexander module of a Seifert matrix over `ring`.
pub fn module_from_seifert(a: &SeifertMatrix, ring: Ring) -> Result<AlexanderModule> {
    AlexanderModule::from_seifert(a, ring)
}

/// Blanchfield pairing data of a Seifert matrix over a field `R`.
#[derive(Clone, Debug)]
pub struct Blanchfield {
    module: AlexanderModule,
}

impl Blanchfield {
    pub fn new(a: &SeifertMatrix, ring: Ring) -> Result<Self> {
        let module = AlexanderModule::from_seifert(a, ring)?;
        if module.free_rank() > 0 {
            return Err(Error::SingularPresentation(ring.to_string()));
        }
        Ok(Blanchfield { module })
    }

    pub fn module(&self) -> &AlexanderModule {
        &self.module
    }

    /// `(1 - t) conj(x)^T M^-1 y` with `M^-1 = V^-1 D^-1 U^-1`.
    pub fn pair(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> Result<BlanchfieldValue> {
        let m = &self.module;
        m.check_vector(x)?;
        m.check_vector(y)?;
        let ring = m.ring;
        let xb: Vec<LaurentPoly> = x.iter().map(|c| c.conj()).collect();
        let n = xb.len();
        let s = &m.smith;
        let b = mat_vec(&s.u_inv, y, ring);
        let one_minus_t = LaurentPoly::from_coeffs(ring, 0, &[1, -1]);
        let mut acc = BlanchfieldValue::zero(ring);
        for i in 0..n {
            if b[i].is_zero() || s.d[i].is_unit() {
                continue;
            }
            let ai = (0..n)
                .filter(|&j| !xb[j].is_zero() && !s.v_inv[j][i].is_zero())
                .fold(LaurentPoly::zero(ring), |acc, j| {
                    &acc + &(&xb[j] * &s.v_inv[j][i])
                });
            if ai.is_zero() {
                continue;
            }
            let num = &(&one_minus_t * &ai) * &b[i];
            acc = &acc + &BlanchfieldValue::new(num, s.d[i].clone());
        }
        Ok(acc)
    }

    /// Nonsingularity of the pairing: the `R`-linear map
    /// `b -> (Bl(b, g_j))_j` on the module must be injective. Checked on the
    /// `R`-basis `t^k g_i` of the Smith summands.
    pub fn is_nonsingular(&self) -> bool {
        let m = &self.module;
        let ring = m.ring;
        let idx = m.summand_indices();
        let d = m.diagonal();
        let gens: Vec<LaurentVector> = idx.iter().map(|&i| m.smith_generator(i)).collect();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (gi, &i) in gens.iter().zip(&idx) {
            for k in 0..d[i].span() {
                let b: LaurentVector = gi.iter().map(|c| c.shift(k as i64)).collect();
                let mut row = Vec::new();
                for (gj, &j) in gens.iter().zip(&idx) {
                    let v = self.pair(&b, gj).expect("vectors have the right shape");
                    row.extend(v.coordinates_over(&d[j]));
                }
                rows.push(row);
            }
        }
        rank(rows, ring) == m.dimension().unwrap_or(usize::MAX)
    }

    /// `Bl(P, P) = 0` for the submodule generated by `gens`.
    pub fn self_annihilating(&self, gens: &[LaurentVector]) -> Result<bool> {
        for x in gens {
            for y in gens {
                if !self.pair(x, y)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn rank(mut rows: Vec<Vec<BigRational>>, ring: Ring) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = ring.inv(&rows[r][c]).unwrap();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = ring.mul(&rows[i][c], &inv);
                for k in c..cols {
                    let sub = ring.mul(&f, &rows[r][k]);
                    rows[i][k] = ring.sub(&rows[i][k], &sub);
                }
            }
        }
        r += 1;
    }
    r
}

/// `Bl(x, y)` for the module of `A` over `ring`.
pub fn blanchfield_pair(
    a: &SeifertMatrix,
    ring: Ring,
    x: &[LaurentPoly],
    y: &[LaurentPoly],
) -> Result<BlanchfieldValue> {
    Blanchfield::new(a, ring)?.pair(x, y)
}

pub fn is_nonsingular(a: &SeifertMatrix, ring: Ring) -> Result<bool> {
    Ok(Blanchfield::new(a, ring)?.is_nonsingular())
}

pub fn generates(a: &SeifertMatrix, ring: Ring, x: &[LaurentPoly]) -> Result<bool> {
    AlexanderModule::from_seifert(a, ring)?.generates(x)
}

pub fn self_annihilating(a: &SeifertMatrix, ring: Ring, gens: &[LaurentVector]) -> Result<bool> {
    Blanchfield::new(a, ring)?.self_annihilating(gens)
}

/// Whether `Delta_A` stays a nonunit in `Z_p[t^+-1]`.
pub fn mod_p_nontrivial(a: &SeifertMatrix, p: u64) -> Result<bool> {
    let ring = Ring::mod_p(p)?;
    Ok(a.alexander_poly(ring).num_terms() >= 2)
}

/// Standard basis vector `e_i` (0-based) of length `n`.
pub fn basis_vector(ring: Ring, n: usize, i: usize) -> LaurentVector {
    (0..n)
        .map(|j| {
            if j == i {
                LaurentPoly::one(ring)
            } else {
                LaurentPoly::zero(ring)
            }
        })
        .collect()
}

/// Reads a coordinate vector from JSON: an array whose entries are integers,
/// coefficient arrays `[c_0, c_1, ...]`, or objects
/// `{"lowest_exponent": k, "coefficients": [...]}`.
pub fn vector_from_json(text: &str, ring: Ring) -> Result<LaurentVector> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput("vector must be a JSON array".into()))?;
    arr.iter().map(|e| poly_from_json(e, ring)).collect()
}

fn poly_from_json(e: &serde_json::Value, ring: Ring) -> Result<LaurentPoly> {
    let bad = || Error::InvalidInput(format!("cannot read a Laurent polynomial from {e}"));
    let coeff = |c: &serde_json::Value| -> Result<BigRational> {
        if let Some(i) = c.as_i64() {
            return Ok(ring.from_i64(i));
        }
        let s = c.as_str().ok_or_else(bad)?;
        let r: BigRational = s.parse().map_err(|_| bad())?;
        if !ring.admits(&r) {
            return Err(bad());
        }
        Ok(ring.reduce(r))
    };
    let (low, coeffs) = match e {
        serde_json::Value::Number(_) => (0, std::slice::from_ref(e)),
        serde_json::Value::Array(a) => (0, a.as_slice()),
        serde_json::Value::Object(o) => {
            let low = o
                .get("lowest_exponent")
                .and_then(|x| x.as_i64())
                .unwrap_or(0);
            (
                low,
                o.get("coefficients")
                    .and_then(|x| x.as_array())
                    .ok_or_else(bad)?
                    .as_slice(),
            )
        }
        _ => return Err(bad()),
    };
    let terms: Result<Vec<(i64, BigRational)>> = coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| Ok((low + k as i64, coeff(c)?)))
        .collect();
    Ok(LaurentPoly::from_terms(ring, terms?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seifert::catalog;

    fn trefoil() -> SeifertMatrix {
        catalog::lookup("trefoil").unwrap()
    }

    #[test]
    fn trefoil_modules() {
        let q = Ring::Rationals;
        let m = AlexanderModule::from_seifert(&trefoil(), q).unwrap();
        assert_eq!(
            m.invariant_factors(),
            vec![LaurentPoly::from_coeffs(q, 0, &[1, -1, 1])]
        );
        let z3 = Ring::mod_p(3).unwrap();
        let m = AlexanderModule::from_seifert(&trefoil(), z3).unwrap();
        assert_eq!(
            m.invariant_factors(),
            vec![LaurentPoly::from_coeffs(z3, 0, &[1, 2, 1])]
        );
        let u = AlexanderModule::from_seifert(&SeifertMatrix::unknot(), q).unwrap();
        assert!(u.is_trivial() && u.is_cyclic());
        assert!(AlexanderModule::from_seifert(&trefoil(), Ring::Integers).is_err());
    }

    #[test]
    fn trefoil_pairing() {
        let q = Ring::Rationals;
        let bl = Blanchfield::new(&trefoil(), q).unwrap();
        let e1 = basis_vector(q, 2, 0);
        let v = bl.pair(&e1, &e1).unwrap();
        assert!(!v.is_zero());
        let delta = LaurentPoly::from_coeffs(q, 0, &[1, -1, 1]);
        assert!(v.times(&delta).is_zero());
        assert!(bl
            .pair(
                &basis_vector(q, 2, 0)
                    .iter()
                    .map(|_| LaurentPoly::zero(q))
                    .collect::<Vec<_>>(),
                &e1
            )
            .unwrap()
            .is_zero());
        assert!(bl.is_nonsingular());
        assert!(!bl
            .self_annihilating(&[e1.clone(), basis_vector(q, 2, 1)])
            .unwrap());
        assert!(bl.self_annihilating(&[]).unwrap());
    }

    #[test]
    fn generation() {
        let q = Ring::Rationals;
        let a = trefoil();
        let e1 = basis_vector(q, 2, 0);
        assert!(generates(&a, q, &e1).unwrap());
        let tm1 = LaurentPoly::from_coeffs(q, 0, &[-1, 1]);
        let x: Vec<LaurentPoly> = e1.iter().map(|c| c * &tm1).collect();
        assert!(generates(&a, q, &x).unwrap());
        let delta = LaurentPoly::from_coeffs(q, 0, &[1, -1, 1]);
        let x: Vec<LaurentPoly> = e1.iter().map(|c| c * &delta).collect();
        assert!(!generates(&a, q, &x).unwrap());
        assert!(generates(&SeifertMatrix::unknot(), q, &[]).unwrap());
        let granny = a.connected_sum(&a);
        assert!(!generates(&granny, q, &basis_vector(q, 4, 0)).unwrap());
        let m = AlexanderModule::from_seifert(&catalog::metabolic(), q).unwrap();
        assert!(m.is_cyclic());
        assert!(m.generates(&m.generators()[0]).unwrap());
    }

    #[test]
    fn mod_p_pitfall() {
        assert!(!mod_p_nontrivial(&SeifertMatrix::unknot(), 5).unwrap());
        assert!(mod_p_nontrivial(&trefoil(), 7).unwrap());
        // Delta = 2t^2 - 3t + 2 reduces to a unit mod 2
        let a = SeifertMatrix::new(vec![vec![-1, 1], vec![0, -2]]).unwrap();
        assert!(!mod_p_nontrivial(&a, 2).unwrap());
        assert!(mod_p_nontrivial(&a, 3).unwrap());
    }

    #[test]
    fn vectors_from_json() {
        let q = Ring::Rationals;
        let v = vector_from_json(
            r#"[1, [0, 1], {"lowest_exponent": -1, "coefficients": ["1/2", 0, 3]}]"#,
            q,
        )
        .unwrap();
        assert!(v[0].is_one());
        assert_eq!(v[1], LaurentPoly::var(q));
        assert_eq!(v[2].low_exp(), Some(-1));
        assert!(vector_from_json("{}", q).is_err());
    }
}
