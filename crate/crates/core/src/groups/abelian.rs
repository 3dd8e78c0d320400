//! Abelian quotients of finitely presented groups.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Ring;

use super::presentation::GroupPresentation;

/// A finitely generated abelian group `Z^free ⊕ ⊕ Z/torsion[i]` together with
/// the images of the presentation generators.
///
/// `generator_images[g]` has `torsion.len() + free_rank` entries: first the
/// torsion coordinates (each read modulo its coefficient), then the free ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianQuotientData {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
    pub generator_images: Vec<Vec<i64>>,
}

impl AbelianQuotientData {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianQuotientData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `P = (R_0, R_1, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSequence(Vec<Ring>);

impl CoefficientSequence {
    pub fn new(rings: Vec<Ring>) -> Result<Self> {
        if rings.is_empty() {
            return Err(Error::InvalidInput("coefficient sequence is empty".into()));
        }
        for r in &rings {
            if let Ring::ModP(p) = r {
                Ring::mod_p(*p)?;
            }
        }
        Ok(CoefficientSequence(rings))
    }

    /// `(Z, Z, ..., Z)` of the given length: the derived series.
    pub fn integers(len: usize) -> Self {
        CoefficientSequence(vec![Ring::Integers; len.max(1)])
    }

    /// Comma-separated ring tags, e.g. `q,z3`.
    pub fn parse(s: &str) -> Result<Self> {
        Self::new(
            s.split(',')
                .map(|t| Ring::parse(t.trim()))
                .collect::<Result<_>>()?,
        )
    }

    pub fn rings(&self) -> &[Ring] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Integer Smith form `P A Q = diag`, returning the diagonal and `Q`.
pub(crate) fn integer_smith(a: &[Vec<i64>], cols: usize) -> Result<(Vec<i64>, Vec<Vec<i64>>)> {
    let rows = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut q: Vec<Vec<i128>> = (0..cols)
        .map(|i| (0..cols).map(|j| (i == j) as i128).collect())
        .collect();
    let n = rows.min(cols);
    let overflow = || Error::InvalidInput("relation matrix entries overflow".into());
    for k in 0..n {
        loop {
            let best = (k..rows)
                .flat_map(|i| (k..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].abs());
            let Some((pi, pj)) = best else { break };
            m.swap(k, pi);
            for row in m.iter_mut().chain(q.iter_mut()) {
                row.swap(k, pj);
            }
            let pivot = m[k][k];
            let mut clean = true;
            for i in k + 1..rows {
                let f = m[i][k] / pivot;
                if f != 0 {
                    for j in 0..cols {
                        m[i][j] = m[i][j].checked_sub(f * m[k][j]).ok_or_else(overflow)?;
                    }
                }
                clean &= m[i][k] == 0;
            }
            for j in k + 1..cols {
                let f = m[k][j] / pivot;
                if f != 0 {
                    for row in m.iter_mut().chain(q.iter_mut()) {
                        row[j] = row[j].checked_sub(f * row[k]).ok_or_else(overflow)?;
                    }
                }
                clean &= m[k][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| m[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    for j in 0..cols {
                        m[k][j] += m[i][j];
                    }
                }
                None => break,
            }
        }
    }
    let d = (0..n)
        .map(|k| m[k][k].abs())
        .map(|x| i64::try_from(x).map_err(|_| overflow()))
        .collect::<Result<_>>()?;
    let q = q
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| overflow()))
                .collect()
        })
        .collect::<Result<_>>()?;
    Ok((d, q))
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &GroupPresentation) -> Vec<Vec<i64>> {
    p.relators()
        .iter()
        .map(|w| {
            let mut row = vec![0i64; p.generators()];
            for &x in w {
                row[x.unsigned_abs() as usize - 1] += x.signum() as i64;
            }
            row
        })
        .collect()
}

/// `G / [G, G]` via the Smith form of the relation matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianQuotientData {
    let n = p.generators();
    let (d, q) =
        integer_smith(&relation_matrix(p), n).expect("exponent sums of a presentation stay small");
    // coordinate k of the new basis: d[k] = 1 dies, d[k] > 1 torsion, else free
    let mut torsion_idx = Vec::new();
    let mut free_idx = Vec::new();
    for k in 0..n {
        match d.get(k) {
            Some(1) => {}
            Some(&t) if t > 1 => torsion_idx.push(k),
            _ => free_idx.push(k),
        }
    }
    let torsion: Vec<u64> = torsion_idx.iter().map(|&k| d[k] as u64).collect();
    let generator_images = (0..n)
        .map(|g| {
            torsion_idx
                .iter()
                .map(|&k| q[g][k].rem_euclid(d[k]))
                .chain(free_idx.iter().map(|&k| q[g][k]))
                .collect()
        })
        .collect();
    AbelianQuotientData {
        free_rank: free_idx.len(),
        torsion,
        generator_images,
    }
}

/// `G / P^1 G = H ⊗ R_0` for `H` the abelianization.
pub fn p1_quotient(p: &GroupPresentation, r0: Ring) -> AbelianQuotientData {
    let h = abelianization(p);
    let t = h.torsion.len();
    match r0 {
        Ring::Integers => h,
        Ring::Rationals => AbelianQuotientData {
            free_rank: h.free_rank,
            torsion: Vec::new(),
            generator_images: h.generator_images.iter().map(|v| v[t..].to_vec()).collect(),
        },
        Ring::ModP(prime) => {
            // Z/t ⊗ Z/p = Z/p when p | t; the class of 1 maps to 1
            let keep: Vec<usize> = (0..t)
                .filter(|&i| h.torsion[i] % prime == 0)
                .chain(t..t + h.free_rank)
                .collect();
            AbelianQuotientData {
                free_rank: 0,
                torsion: vec![prime; keep.len()],
                generator_images: h
                    .generator_images
                    .iter()
                    .map(|v| {
                        keep.iter()
                            .map(|&i| v[i].rem_euclid(prime as i64))
                            .collect()
                    })
                    .collect(),
            }
        }
    }
}
