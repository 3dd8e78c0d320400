use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::descriptor::KnotDescriptor;
use crate::error::{Error, Result};
use crate::exactnum::UnitCirclePoint;

use super::certificate::{certify_member, FamilyCertificate};
use super::FamilySpec;

/// `w_j^r` written as `(p_j, r)`.
pub(crate) type Point = (u64, u64);

pub(crate) fn point(p: u64, r: u64) -> UnitCirclePoint {
    UnitCirclePoint::new(r as i64, p).expect("positive order")
}

/// Points where member `i` (0-based) must vanish, and its target point.
pub(crate) fn constraint_points(primes: &[u64], i: usize) -> (Vec<Point>, Point) {
    let p = primes[i];
    let mut zero: Vec<Point> = (2..p.saturating_sub(1)).map(|r| (p, r)).collect();
    for &q in &primes[..i] {
        zero.extend((1..q).map(|r| (q, r)));
    }
    (zero, (p, 1))
}

/// Pool atoms followed by their cables, in search order.
fn candidates(spec: &FamilySpec) -> Result<Vec<KnotDescriptor>> {
    let mut out = Vec::new();
    for name in &spec.pool {
        let atom: KnotDescriptor = name
            .parse()
            .map_err(|e| Error::InvalidSpec(format!("pool entry `{name}`: {e}")))?;
        atom.signature_step().map_err(|e| {
            Error::InvalidSpec(format!("pool entry `{name}` is not catalog-exact: {e}"))
        })?;
        out.push(atom.clone());
        for r in 2..=spec.max_cable {
            out.push(KnotDescriptor::cable(r, atom.clone())?);
        }
    }
    Ok(out)
}

struct Table {
    /// `columns[c][k]`: signature of candidate `c` at zero point `k`
    columns: Vec<Vec<i64>>,
    target: Vec<i64>,
}

fn tabulate(cands: &[KnotDescriptor], zero: &[Point], target: Point) -> Result<Table> {
    let mut cache: HashMap<(usize, Point), i64> = HashMap::new();
    let mut eval = |c: usize, pt: Point| -> Result<i64> {
        if let Some(&v) = cache.get(&(c, pt)) {
            return Ok(v);
        }
        let v = cands[c].sigma_eval(&point(pt.0, pt.1))?;
        cache.insert((c, pt), v);
        Ok(v)
    };
    let mut columns = Vec::with_capacity(cands.len());
    let mut tgt = Vec::with_capacity(cands.len());
    for c in 0..cands.len() {
        columns.push(
            zero.iter()
                .map(|&pt| eval(c, pt))
                .collect::<Result<Vec<_>>>()?,
        );
        tgt.push(eval(c, target)?);
    }
    Ok(Table {
        columns,
        target: tgt,
    })
}

const PAIR_COEFFS: i64 = 3;

/// Integer combination vanishing on the zero points with nonzero target:
/// singletons first, then pairs with small coefficients, then a rational
/// nullspace vector.
fn search(t: &Table) -> Option<Vec<(usize, i64)>> {
    let n = t.columns.len();
    for c in 0..n {
        if t.target[c] != 0 && t.columns[c].iter().all(|&x| x == 0) {
            return Some(vec![(c, 1)]);
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            for x in 1..=PAIR_COEFFS {
                for y in (-PAIR_COEFFS..=PAIR_COEFFS).filter(|&y| y != 0) {
                    if x * t.target[a] + y * t.target[b] == 0 {
                        continue;
                    }
                    if t.columns[a]
                        .iter()
                        .zip(&t.columns[b])
                        .all(|(&u, &v)| x * u + y * v == 0)
                    {
                        return Some(vec![(a, x), (b, y)]);
                    }
                }
            }
        }
    }
    nullspace_search(t)
}

fn nullspace_search(t: &Table) -> Option<Vec<(usize, i64)>> {
    let n = t.columns.len();
    let rows = t.columns.first().map_or(0, |c| c.len());
    let mut m: Vec<Vec<BigRational>> = (0..rows)
        .map(|k| {
            (0..n)
                .map(|c| BigRational::from_integer(t.columns[c][k].into()))
                .collect()
        })
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let d = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut x = vec![BigRational::zero(); n];
        x[free] = BigRational::one();
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = -m[i][free].clone();
        }
        let value: BigRational = x
            .iter()
            .zip(&t.target)
            .map(|(a, &b)| a * BigRational::from_integer(b.into()))
            .sum();
        if value.is_zero() {
            continue;
        }
        let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let ints: Vec<BigInt> = x
            .iter()
            .map(|v| (v * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let out: Option<Vec<(usize, i64)>> = ints
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(c, v)| i64::try_from(&(v / &g)).ok().map(|v| (c, v)))
            .collect();
        if out.is_some() {
            return out;
        }
    }
    None
}

fn combination(cands: &[KnotDescriptor], coeffs: &[(usize, i64)]) -> Result<KnotDescriptor> {
    let mut parts = Vec::new();
    for &(c, k) in coeffs {
        let term = if k > 0 {
            cands[c].clone()
        } else {
            KnotDescriptor::mirror(cands[c].clone())
        };
        parts.extend(std::iter::repeat_n(term, k.unsigned_abs() as usize));
    }
    if parts.len() == 1 {
        return Ok(parts.remove(0));
    }
    KnotDescriptor::sum(parts)
}

/// Member `i` (0-based): `m` copies of `K # -cable(p_i, K)`.
pub(crate) fn build_member(
    spec: &FamilySpec,
    cands: &[KnotDescriptor],
    i: usize,
) -> Result<KnotDescriptor> {
    let (zero, target) = constraint_points(&spec.primes, i);
    let table = tabulate(cands, &zero, target)?;
    let coeffs = search(&table).ok_or_else(|| {
        let pts: Vec<String> = zero.iter().map(|(p, r)| format!("w_{p}^{r}")).collect();
        Error::Infeasible(format!(
            "member {} needs sigma(w_{}) != 0 with zeros at {{{}}}",
            i + 1,
            target.0,
            pts.join(", ")
        ))
    })?;
    let mut k = combination(cands, &coeffs)?;
    let mut s = k.sigma_eval(&point(target.0, target.1))?;
    if s < 0 {
        k = KnotDescriptor::mirror(k);
        s = -s;
    }
    let threshold = spec.threshold();
    let mut copies = 2u64;
    while BigRational::from_integer((copies as i64 * s).into()) <= threshold {
        copies += 2;
    }
    let p = spec.primes[i];
    let base = KnotDescriptor::sum(vec![
        k.clone(),
        KnotDescriptor::mirror(KnotDescriptor::cable(p, k)?),
    ])?;
    KnotDescriptor::sum(vec![base; copies as usize])
}

/// Builds and certifies one member per prime.
pub fn solve_family(spec: &FamilySpec) -> Result<FamilyCertificate> {
    let stages = spec.validate()?;
    let cands = candidates(spec)?;
    let mut members = Vec::with_capacity(spec.primes.len());
    for i in 0..spec.primes.len() {
        let j = build_member(spec, &cands, i)?;
        let member = certify_member(spec, i, j)?;
        if !(member.c1 && member.c2 && member.c3) {
            return Err(Error::Infeasible(format!(
                "member {} fails its conditions after assembly",
                i + 1
            )));
        }
        members.push(member);
    }
    Ok(FamilyCertificate::new(spec, stages, members))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constraint_sets() {
        let (z, t) = constraint_points(&[2, 3, 5], 2);
        assert_eq!(t, (5, 1));
        assert_eq!(z, vec![(5, 2), (5, 3), (2, 1), (3, 1), (3, 2)]);
        assert!(constraint_points(&[2], 0).0.is_empty());
    }

    #[test]
    fn nullspace_fallback() {
        // kernel spanned by (1, -1, 1); the target pairs with it to 1
        let t = Table {
            columns: vec![vec![1, 1], vec![1, 2], vec![0, 1]],
            target: vec![1, 0, 0],
        };
        let x = nullspace_search(&t).unwrap();
        let at = |k: usize| x.iter().map(|&(c, v)| v * t.columns[c][k]).sum::<i64>();
        assert_eq!((at(0), at(1)), (0, 0));
        assert_ne!(x.iter().map(|&(c, v)| v * t.target[c]).sum::<i64>(), 0);
    }
}
