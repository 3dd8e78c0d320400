use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::circle::UnitCirclePoint;
use super::laurent::LaurentPoly;
use super::ring::Ring;

/// Integer coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.read().unwrap().get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by every Phi_d, d | n, d < n
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            num = exact_div_monic(&num, &cyclotomic_poly(d));
        }
    }
    cache.write().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// `Q(zeta_q)` in the power basis `1, zeta, ..., zeta^(phi(q)-1)`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    degree: usize,
    // zeta^k in the power basis, k = 0..2q
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicField {
    /// Shared instance for conductor `q`.
    pub fn get(q: u64) -> Arc<CyclotomicField> {
        assert!(q >= 1);
        static FIELDS: OnceLock<RwLock<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(f) = fields.read().unwrap().get(&q) {
            return f.clone();
        }
        let f = Arc::new(Self::build(q));
        fields.write().unwrap().entry(q).or_insert(f).clone()
    }

    fn build(q: u64) -> CyclotomicField {
        let phi = cyclotomic_poly(q);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(2 * q as usize);
        let mut cur = vec![BigInt::zero(); degree];
        cur[0] = BigInt::one();
        for _ in 0..(2 * q as usize).max(2 * degree) {
            powers.push(cur.clone());
            // multiply by zeta: shift, then reduce the overflow with the monic modulus
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigInt::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &top * &phi[i];
                }
            }
        }
        CyclotomicField {
            conductor: q,
            degree,
            powers,
        }
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn power(&self, k: u64) -> &[BigInt] {
        &self.powers[(k % self.conductor) as usize]
    }
}

/// Element of `Q(zeta_q)`, exact rational coordinates in the power basis.
#[derive(Clone)]
pub struct CyclotomicElement {
    field: Arc<CyclotomicField>,
    coords: Vec<BigRational>,
}

impl CyclotomicElement {
    pub fn zero(q: u64) -> Self {
        let field = CyclotomicField::get(q);
        let coords = vec![BigRational::zero(); field.degree];
        CyclotomicElement { field, coords }
    }

    pub fn from_rational(q: u64, c: BigRational) -> Self {
        let mut z = Self::zero(q);
        z.coords[0] = c;
        z
    }

    pub fn from_int(q: u64, c: i64) -> Self {
        Self::from_rational(q, BigRational::from_integer(BigInt::from(c)))
    }

    pub fn one(q: u64) -> Self {
        Self::from_int(q, 1)
    }

    /// `zeta_q^k`
    pub fn zeta_pow(q: u64, k: i64) -> Self {
        let field = CyclotomicField::get(q);
        let k = k.rem_euclid(q as i64) as u64;
        let coords = field
            .power(k)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        CyclotomicElement { field, coords }
    }

    /// The point `w` as an element of `Q(zeta_{order(w)})`.
    pub fn from_point(w: &UnitCirclePoint) -> Self {
        Self::zeta_pow(w.order(), w.numer() as i64)
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| self.coords[0].clone())
    }

    fn from_power_sum(
        field: &Arc<CyclotomicField>,
        sums: impl IntoIterator<Item = (u64, BigRational)>,
    ) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree];
        for (k, c) in sums {
            if c.is_zero() {
                continue;
            }
            for (slot, b) in coords.iter_mut().zip(field.power(k)) {
                if !b.is_zero() {
                    *slot += &c * b;
                }
            }
        }
        CyclotomicElement {
            field: field.clone(),
            coords,
        }
    }

    /// Complex conjugation, `zeta -> zeta^(q-1)`.
    pub fn conj(&self) -> Self {
        let q = self.field.conductor;
        Self::from_power_sum(
            &self.field,
            self.coords
                .iter()
                .enumerate()
                .map(|(k, c)| ((q - k as u64 % q) % q, c.clone())),
        )
    }

    /// Fixed by conjugation, i.e. lies in the maximal real subfield.
    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CyclotomicElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| a * c).collect(),
        }
    }

    /// Image under the embedding `Q(zeta_q) -> Q(zeta_m)`, `q | m`.
    pub fn lift(&self, m: u64) -> Self {
        let q = self.field.conductor;
        assert!(m % q == 0, "cannot lift conductor {q} to {m}");
        if m == q {
            return self.clone();
        }
        let target = CyclotomicField::get(m);
        let step = m / q;
        Self::from_power_sum(
            &target,
            self.coords
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u64 * step, c.clone())),
        )
    }

    /// Image under the automorphism `zeta -> zeta^r`, `gcd(r, q) = 1`.
    pub fn galois(&self, r: i64) -> Self {
        let q = self.field.conductor;
        let r = r.rem_euclid(q as i64) as u64;
        assert!(
            r.gcd(&q) == 1,
            "zeta -> zeta^{r} is not an automorphism mod {q}"
        );
        if r == 1 {
            return self.clone();
        }
        Self::from_power_sum(
            &self.field,
            self.coords
                .iter()
                .enumerate()
                .map(|(k, c)| (k as u64 * r % q, c.clone())),
        )
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let (qa, qb) = (a.conductor(), b.conductor());
        if qa == qb {
            return (a.clone(), b.clone());
        }
        let m = qa.lcm(&qb);
        (a.lift(m), b.lift(m))
    }

    /// Multiplicative inverse by solving `x * y = 1` as a rational linear system.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.field.degree;
        // column j of the system: x * zeta^j
        let cols: Vec<Self> = (0..n)
            .map(|j| self * &Self::zeta_pow(self.conductor(), j as i64))
            .collect();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c.coords[i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        let sol = solve_in_place(&mut m, n)?;
        Some(CyclotomicElement {
            field: self.field.clone(),
            coords: sol,
        })
    }

    /// Value of `p` at `zeta_q^k`, for integer or rational coefficients.
    pub fn eval_poly(p: &LaurentPoly, w: &UnitCirclePoint) -> Self {
        assert!(
            !matches!(p.ring(), Ring::ModP(_)),
            "evaluation needs coefficients embedded in Q"
        );
        let q = w.order();
        let field = CyclotomicField::get(q);
        let r = w.numer() as i128;
        Self::from_power_sum(
            &field,
            p.terms()
                .map(|(e, c)| (((e as i128 * r).rem_euclid(q as i128)) as u64, c.clone())),
        )
    }

    /// Numeric value, for diagnostics only.
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let q = self.field.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coords.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = 2.0 * std::f64::consts::PI * k as f64 / q;
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }
}

/// Gauss-Jordan on an augmented `n x (n+1)` system; `None` if singular.
fn solve_in_place(m: &mut [Vec<BigRational>], n: usize) -> Option<Vec<BigRational>> {
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut().skip(col) {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (src, dst) = if r < col {
                    let (a, b) = m.split_at_mut(col);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[col], &mut b[0])
                };
                for c in col..=n {
                    if !src[c].is_zero() {
                        dst[c] -= &f * &src[c];
                    }
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for CyclotomicElement {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor() == other.conductor() {
            self.coords == other.coords
        } else {
            let (a, b) = Self::aligned(self, other);
            a.coords == b.coords
        }
    }
}

impl Eq for CyclotomicElement {}

impl Add for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn add(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicElement::aligned(self, rhs);
            return &a + &b;
        }
        CyclotomicElement {
            field: self.field.clone(),
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn sub(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        self + &(-rhs)
    }
}

impl Neg for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn neg(self) -> CyclotomicElement {
        CyclotomicElement {
            field: self.field.clone(),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &CyclotomicElement {
    type Output = CyclotomicElement;
    fn mul(self, rhs: &CyclotomicElement) -> CyclotomicElement {
        if self.conductor() != rhs.conductor() {
            let (a, b) = CyclotomicElement::aligned(self, rhs);
            return &a * &b;
        }
        let n = self.field.degree;
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<BigRational> = prod[..n].to_vec();
        for (k, c) in prod.into_iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (slot, b) in coords.iter_mut().zip(self.field.power(k as u64)) {
                if !b.is_zero() {
                    *slot += &c * b;
                }
            }
        }
        CyclotomicElement {
            field: self.field.clone(),
            coords,
        }
    }
}

impl fmt::Debug for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = self.conductor();
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                _ => write!(f, "({c})z{q}^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
