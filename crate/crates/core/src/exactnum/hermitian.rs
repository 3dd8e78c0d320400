use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::cyclotomic::CyclotomicElement;
use super::sign::certified_sign;
use crate::error::{Error, Result};

pub type CycloMatrix = Vec<Vec<CyclotomicElement>>;

fn check_hermitian(m: &CycloMatrix) -> Result<()> {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidInput("matrix is not square".into()));
        }
        for j in i..n {
            if m[i][j] != m[j][i].conj() {
                return Err(Error::NonHermitianInput { row: i, col: j });
            }
        }
    }
    Ok(())
}

/// Signature of a hermitian matrix over a cyclotomic field.
///
/// Diagonalizes by hermitian congruence (Sylvester's law of inertia) and
/// reads off the certified signs of the real pivots.
pub fn hermitian_signature(m: &CycloMatrix) -> Result<i64> {
    Ok(CongruencePivots::new(m)?.signature(1))
}

/// Pivots of a fraction-free hermitian congruence diagonalization.
///
/// Whether a pivot vanishes does not depend on the embedding of the field, so
/// one elimination serves every Galois conjugate of the matrix.
#[derive(Clone, Debug)]
pub struct CongruencePivots {
    pivots: Vec<CyclotomicElement>,
}

impl CongruencePivots {
    pub fn new(m: &CycloMatrix) -> Result<Self> {
        check_hermitian(m)?;
        let mut a = m.clone();
        let n = a.len();
        let mut pivots = Vec::with_capacity(n);
        for k in 0..n {
            if a[k][k].is_zero() {
                if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                    a.swap(k, p);
                    for row in a.iter_mut() {
                        row.swap(k, p);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !a[k][j].is_zero()) {
                    // a_kk = a_jj = 0: row_k += c row_j, col_k += conj(c) col_j with
                    // c = a_kj makes the new a_kk = 2 |a_kj|^2 != 0
                    let c = a[k][j].clone();
                    let cc = c.conj();
                    let row_j = a[j].clone();
                    for (x, y) in a[k].iter_mut().zip(&row_j) {
                        *x = &*x + &(&c * y);
                    }
                    for row in a.iter_mut() {
                        let y = row[j].clone();
                        row[k] = &row[k] + &(&cc * &y);
                    }
                } else {
                    // row k is zero below the processed block
                    continue;
                }
            }
            let d = a[k][k].clone();
            debug_assert!(d.is_real());
            // d A22 - a a^* is d times the Schur complement
            let row_k = a[k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = &(&d * &a[i][j]) - &(&a[i][k] * &row_k[j]);
                }
            }
            remove_content(&mut a, k + 1);
            pivots.push(d);
        }
        Ok(CongruencePivots { pivots })
    }

    /// Signature of the image of the matrix under `zeta -> zeta^r`.
    pub fn signature(&self, r: i64) -> i64 {
        // the k-th Schur pivot has the sign of d_1 ... d_k
        let mut sign = 1i64;
        let mut sig = 0;
        for d in &self.pivots {
            sign *= certified_sign(&d.galois(r)) as i64;
            sig += sign;
        }
        sig
    }
}

/// Divide the trailing block by the positive rational content of its entries.
fn remove_content(a: &mut CycloMatrix, from: usize) {
    let (mut num, mut den) = (BigInt::zero(), BigInt::one());
    for c in a[from..]
        .iter()
        .flat_map(|r| &r[from..])
        .flat_map(|x| x.coords())
    {
        if !c.is_zero() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    if num.is_zero() || (num.is_one() && den.is_one()) {
        return;
    }
    let f = BigRational::new(den, num);
    for row in a[from..].iter_mut() {
        for x in row[from..].iter_mut() {
            *x = x.scale(&f);
        }
    }
}

/// Characteristic polynomial `det(x I - M)` by the Faddeev-LeVerrier recursion,
/// coefficients lowest degree first.
pub fn characteristic_polynomial(m: &CycloMatrix) -> Vec<CyclotomicElement> {
    let n = m.len();
    if n == 0 {
        return vec![CyclotomicElement::one(1)];
    }
    let q = m[0][0].conductor();
    let zero = CyclotomicElement::zero(q);
    let mut coeffs = vec![zero.clone(); n + 1];
    coeffs[n] = CyclotomicElement::one(q);
    // M_k = M (M_{k-1} + c_{n-k+1} I), c_{n-k} = -tr(M_k)/k
    let mut mk: CycloMatrix = vec![vec![zero.clone(); n]; n];
    for k in 1..=n {
        let prev_c = coeffs[n - k + 1].clone();
        let shifted: CycloMatrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            &mk[i][j] + &prev_c
                        } else {
                            mk[i][j].clone()
                        }
                    })
                    .collect()
            })
            .collect();
        mk = mat_mul(m, &shifted);
        let tr = (0..n).fold(zero.clone(), |acc, i| &acc + &mk[i][i]);
        coeffs[n - k] = tr.scale(&BigRational::new(BigInt::from(-1), BigInt::from(k as i64)));
    }
    coeffs
}

fn mat_mul(a: &CycloMatrix, b: &CycloMatrix) -> CycloMatrix {
    let n = a.len();
    let q = a[0][0].conductor();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n).fold(CyclotomicElement::zero(q), |acc, k| {
                        if a[i][k].is_zero() || b[k][j].is_zero() {
                            acc
                        } else {
                            &acc + &(&a[i][k] * &b[k][j])
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Signature from sign variations of the characteristic polynomial.
///
/// A hermitian matrix has only real eigenvalues, so Descartes' rule of signs
/// counts the positive (and, on `p(-x)`, the negative) ones exactly.
pub fn hermitian_signature_charpoly(m: &CycloMatrix) -> Result<i64> {
    check_hermitian(m)?;
    let cp = characteristic_polynomial(m);
    let signs: Vec<i32> = cp.iter().map(certified_sign).collect();
    let variations = |s: &[i32]| -> i64 {
        let nz: Vec<i32> = s.iter().copied().filter(|&x| x != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count() as i64
    };
    let pos = variations(&signs);
    let neg_signs: Vec<i32> = signs
        .iter()
        .enumerate()
        .map(|(k, &s)| if k % 2 == 1 { -s } else { s })
        .collect();
    let neg = variations(&neg_signs);
    Ok(pos - neg)
}

/// Integer matrix embedded in `Q(zeta_q)`.
pub fn integer_matrix(q: u64, entries: &[Vec<i64>]) -> CycloMatrix {
    entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|&x| CyclotomicElement::from_int(q, x))
                .collect()
        })
        .collect()
}
