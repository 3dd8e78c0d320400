//! Smith normal form over `F[t^+-1]` for a field `F`.
//!
//! The Laurent ring is Euclidean with respect to the span (highest minus
//! lowest exponent): to divide `a` by `b`, strip the powers of `t` (units),
//! divide the resulting polynomials, and put the power back on the quotient.

use crate::error::{Error, Result};
use crate::exactnum::{LaurentPoly, Ring};

pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

/// `M = U * diag(d) * V` with `U`, `V` invertible over `F[t^+-1]`.
///
/// `d` has `min(rows, cols)` entries, each zero or monic with lowest exponent
/// zero, and `d[i]` divides `d[i + 1]`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: LaurentMatrix,
    pub d: Vec<LaurentPoly>,
    pub v: LaurentMatrix,
    pub u_inv: LaurentMatrix,
    pub v_inv: LaurentMatrix,
}

/// Euclidean division in the Laurent ring: `a = q b + r` with
/// `span(r) < span(b)` or `r = 0`.
pub fn laurent_div_rem(a: &LaurentPoly, b: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let ring = a.ring();
    let Some(la) = a.low_exp() else {
        return (LaurentPoly::zero(ring), LaurentPoly::zero(ring));
    };
    let lb = b.low_exp().expect("division by zero");
    let (q, r) = a.shift(-la).div_rem(&b.shift(-lb));
    (q.shift(la - lb), r.shift(la))
}

pub fn identity(ring: Ring, n: usize) -> LaurentMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        LaurentPoly::one(ring)
                    } else {
                        LaurentPoly::zero(ring)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &LaurentMatrix, b: &LaurentMatrix, ring: Ring) -> LaurentMatrix {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = LaurentPoly::zero(ring);
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            acc = &acc + &(&a[i][l] * &b[l][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

struct Work {
    a: LaurentMatrix,
    p: LaurentMatrix, // P M Q = a
    p_inv: LaurentMatrix,
    q: LaurentMatrix,
    q_inv: LaurentMatrix,
}

impl Work {
    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        self.p.swap(i, k);
        for row in self.p_inv.iter_mut() {
            row.swap(i, k);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut().chain(self.q.iter_mut()) {
            row.swap(j, k);
        }
        self.q_inv.swap(j, k);
    }

    /// row_i += f * row_k
    fn add_row(&mut self, i: usize, k: usize, f: &LaurentPoly) {
        for m in [&mut self.a, &mut self.p] {
            let src = m[k].clone();
            for (x, y) in m[i].iter_mut().zip(&src) {
                if !y.is_zero() {
                    *x = &*x + &(f * y);
                }
            }
        }
        // P^-1 <- P^-1 (I - f e_i e_k^T): col_k -= f col_i
        for row in self.p_inv.iter_mut() {
            if !row[i].is_zero() {
                row[k] = &row[k] - &(f * &row[i]);
            }
        }
    }

    /// col_j += f * col_k
    fn add_col(&mut self, j: usize, k: usize, f: &LaurentPoly) {
        for m in [&mut self.a, &mut self.q] {
            for row in m.iter_mut() {
                if !row[k].is_zero() {
                    row[j] = &row[j] + &(f * &row[k]);
                }
            }
        }
        // Q^-1 <- (I - f e_k e_j^T) Q^-1: row_k -= f row_j
        let src = self.q_inv[j].clone();
        for (x, y) in self.q_inv[k].iter_mut().zip(&src) {
            if !y.is_zero() {
                *x = &*x - &(f * y);
            }
        }
    }

    /// row_k *= s for a unit s
    fn scale_row(&mut self, k: usize, s: &LaurentPoly, s_inv: &LaurentPoly) {
        for m in [&mut self.a, &mut self.p] {
            for x in m[k].iter_mut() {
                *x = &*x * s;
            }
        }
        for row in self.p_inv.iter_mut() {
            row[k] = &row[k] * s_inv;
        }
    }
}

/// Smith normal form of a matrix over `ring[t^+-1]`; `ring` must be a field.
pub fn smith_normal_form(m: &LaurentMatrix, ring: Ring) -> Result<SmithForm> {
    if !ring.is_field() {
        return Err(Error::InvalidInput(format!(
            "Smith normal form needs field coefficients, got {ring}"
        )));
    }
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    if m.iter().any(|r| r.len() != cols) {
        return Err(Error::InvalidInput("ragged matrix".into()));
    }
    if m.iter().flatten().any(|x| x.ring() != ring) {
        return Err(Error::InvalidInput(
            "matrix entries are not over the requested ring".into(),
        ));
    }
    let mut w = Work {
        a: m.clone(),
        p: identity(ring, rows),
        p_inv: identity(ring, rows),
        q: identity(ring, cols),
        q_inv: identity(ring, cols),
    };
    let n = rows.min(cols);
    for k in 0..n {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let x = &w.a[i][j];
                    if !x.is_zero() && best.is_none_or(|b| x.span() < b.2) {
                        best = Some((i, j, x.span()));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            let pivot = w.a[k][k].clone();
            let mut clean = true;
            for i in k + 1..rows {
                if w.a[i][k].is_zero() {
                    continue;
                }
                let (qt, r) = laurent_div_rem(&w.a[i][k], &pivot);
                w.add_row(i, k, &-&qt);
                clean &= r.is_zero();
            }
            for j in k + 1..cols {
                if w.a[k][j].is_zero() {
                    continue;
                }
                let (qt, r) = laurent_div_rem(&w.a[k][j], &pivot);
                w.add_col(j, k, &-&qt);
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !pivot.divides(&w.a[i][j])));
            match bad {
                Some(i) => {
                    let one = LaurentPoly::one(ring);
                    w.add_row(k, i, &one);
                }
                None => break,
            }
        }
        let x = w.a[k][k].clone();
        if !x.is_zero() {
            let low = x.low_exp().unwrap();
            let lc = x.leading_coeff();
            let s = LaurentPoly::monomial(ring, ring.inv(&lc).unwrap(), -low);
            let s_inv = LaurentPoly::monomial(ring, lc, low);
            w.scale_row(k, &s, &s_inv);
        }
    }
    let d = (0..n).map(|k| w.a[k][k].clone()).collect();
    Ok(SmithForm {
        u: w.p_inv,
        d,
        v: w.q_inv,
        u_inv: w.p,
        v_inv: w.q,
    })
}

impl SmithForm {
    /// `U * diag(d) * V`, for checking.
    pub fn reconstruct(&self, ring: Ring) -> LaurentMatrix {
        let rows = self.u.len();
        let cols = self.v.len();
        let mut dm: LaurentMatrix = vec![vec![LaurentPoly::zero(ring); cols]; rows];
        for (k, x) in self.d.iter().enumerate() {
            dm[k][k] = x.clone();
        }
        mat_mul(&mat_mul(&self.u, &dm, ring), &self.v, ring)
    }
}
