//! Finite groups as multiplication tables, and the mixed-coefficient
//! commutator series computed by brute force.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exactnum::Ring;

use super::abelian::CoefficientSequence;

/// Elements are `0..n` with identity `0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

pub type Subgroup = BTreeSet<usize>;

impl FiniteGroup {
    /// Checks closure, identity `0`, inverses and associativity.
    pub fn from_table(name: &str, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > 10_000 {
            return Err(Error::InvalidInput(format!("group order {n} out of range")));
        }
        if table
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidInput("table is not square over 0..n".into()));
        }
        if (0..n).any(|a| table[0][a] != a || table[a][0] != a) {
            return Err(Error::InvalidInput("0 is not the identity".into()));
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == 0)
                .ok_or_else(|| Error::InvalidInput(format!("{a} has no inverse")))?;
        }
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if table[table[a][b]][c] != table[a][table[b][c]] {
                            return Err(Error::InvalidInput("table is not associative".into()));
                        }
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            table,
            inverse,
        })
    }

    /// Group of permutations closed under composition, generated by `gens`.
    pub fn from_permutations(name: &str, gens: &[Vec<usize>]) -> Result<Self> {
        let deg = gens.first().map_or(0, |g| g.len());
        let id: Vec<usize> = (0..deg).collect();
        let mut elems = vec![id];
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let h: Vec<usize> = elems[i].iter().map(|&x| g[x]).collect();
                if !elems.contains(&h) {
                    elems.push(h);
                }
            }
            i += 1;
        }
        let index = |p: &Vec<usize>| elems.iter().position(|e| e == p).unwrap();
        let table = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| index(&b.iter().map(|&x| a[x]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Self {
        Self::from_table(
            &format!("Z/{n}"),
            (0..n)
                .map(|a| (0..n).map(|b| (a + b) % n).collect())
                .collect(),
        )
        .unwrap()
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    pub fn dihedral4() -> Self {
        Self::from_permutations("D4", &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]]).unwrap()
    }

    pub fn alternating4() -> Self {
        Self::from_permutations("A4", &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap()
    }

    pub fn symmetric4() -> Self {
        Self::from_permutations("S4", &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap()
    }

    /// Regular representation of `i, j` in the quaternions on 8 points.
    pub fn quaternion() -> Self {
        // points: 0 = 1, 1 = i, 2 = j, 3 = k, 4..8 their negatives; left multiplication
        let li = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let lj = vec![2, 7, 4, 1, 6, 3, 0, 5];
        Self::from_permutations("Q8", &[li, lj]).unwrap()
    }

    /// The groups the series checks run over.
    pub fn test_set() -> Vec<FiniteGroup> {
        vec![
            Self::symmetric3(),
            Self::dihedral4(),
            Self::alternating4(),
            Self::quaternion(),
            Self::symmetric4(),
        ]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn generated(&self, gens: impl IntoIterator<Item = usize>) -> Subgroup {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut out: Subgroup = [0].into();
        let mut frontier = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if out.insert(y) {
                    frontier.push(y);
                }
            }
        }
        out
    }

    /// `[H, H]`
    pub fn commutator(&self, h: &Subgroup) -> Subgroup {
        let mut gens = BTreeSet::new();
        for &a in h {
            for &b in h {
                gens.insert(self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))));
            }
        }
        self.generated(gens)
    }

    /// `G^(0) = G ⊇ G^(1) ⊇ ...` up to stabilization.
    pub fn derived_series(&self) -> Vec<Subgroup> {
        let mut out = vec![self.whole()];
        loop {
            let next = self.commutator(out.last().unwrap());
            if &next == out.last().unwrap() {
                return out;
            }
            out.push(next);
        }
    }

    /// Kernel of `H -> H/[H,H] ⊗ R`, pulled back to `H`.
    pub fn mixed_step(&self, h: &Subgroup, ring: Ring) -> Subgroup {
        let c = self.commutator(h);
        match ring {
            Ring::Integers => c,
            // a finite abelian group is torsion, so tensoring with Q kills it
            Ring::Rationals => h.clone(),
            Ring::ModP(p) => {
                let mut gens = c;
                for &g in h {
                    let mut x = 0;
                    for _ in 0..p {
                        x = self.mul(x, g);
                    }
                    gens.insert(x);
                }
                self.generated(gens)
            }
        }
    }
}

/// `P^0 T, P^1 T, ..., P^len T` for `P = (R_0, ..., R_{len-1})`.
pub fn mixed_series_finite_oracle(t: &FiniteGroup, seq: &CoefficientSequence) -> Vec<Subgroup> {
    let mut out = vec![t.whole()];
    for &r in seq.rings() {
        let next = t.mixed_step(out.last().unwrap(), r);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(s: &[Subgroup]) -> Vec<usize> {
        s.iter().map(|h| h.len()).collect()
    }

    #[test]
    fn orders() {
        let orders: Vec<usize> = FiniteGroup::test_set().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![6, 8, 12, 8, 24]);
    }

    #[test]
    fn derived_series() {
        let expect = [
            vec![6, 3, 1],
            vec![8, 2, 1],
            vec![12, 4, 1],
            vec![8, 2, 1],
            vec![24, 12, 4, 1],
        ];
        for (g, e) in FiniteGroup::test_set().iter().zip(expect) {
            assert_eq!(sizes(&g.derived_series()), e, "{}", g.name());
        }
    }

    #[test]
    fn quaternion_center() {
        let q = FiniteGroup::quaternion();
        let series = mixed_series_finite_oracle(&q, &CoefficientSequence::integers(3));
        assert_eq!(sizes(&series), vec![8, 2, 1, 1]);
        // the commutator subgroup is {1, -1}
        assert_eq!(
            series[1]
                .iter()
                .map(|&x| q.mul(x, x))
                .collect::<BTreeSet<_>>(),
            [0].into()
        );
    }

    #[test]
    fn cyclic_mod_three() {
        let z6 = FiniteGroup::cyclic(6);
        let s = mixed_series_finite_oracle(
            &z6,
            &CoefficientSequence::new(vec![Ring::ModP(3)]).unwrap(),
        );
        assert_eq!(s[1], [0, 3].into());
        let s = mixed_series_finite_oracle(
            &z6,
            &CoefficientSequence::new(vec![Ring::ModP(2)]).unwrap(),
        );
        assert_eq!(s[1], [0, 2, 4].into());
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteGroup::from_table("x", vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table("x", vec![vec![1, 0], vec![0, 1]]).is_err());
    }
}
