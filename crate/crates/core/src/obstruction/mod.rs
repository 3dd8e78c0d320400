//! Families of knots whose linear combinations are not `(n.5)`-solvable.
//!
//! For primes `p_1 < ... < p_m` and `w_i = e^{2 pi i / p_i}`, member `J^i`
//! satisfies
//!
//! * C1: `sigma(w_i) = sigma(w_i^-1) > nL` and `sigma(w_i^r) = 0` for the
//!   other nontrivial `r`;
//! * C2: `sigma(w_j^r) = 0` for every `j < i` and every `r`;
//! * C3: `Arf = 0` and the integral of the signature function vanishes.
//!
//! [`solve_family`] finds such knots by an exact search over torus-knot atoms
//! and their cables, [`verify_family`] re-derives every condition, and
//! [`nonsolvability_certificate`] checks the final inequality
//! `sum_r sigma_{J^1}(w_1^r) > nL`.
//!
//! ```
//! use knotconc::obstruction::{nonsolvability_certificate, solve_family, verify_family, FamilySpec};
//!
//! let spec = FamilySpec::from_json(r#"{
//!     "depth": 1,
//!     "primes": [2, 3],
//!     "cheeger_gromov_bound": "1",
//!     "stages": [{ "carrier": "metabolic" }],
//!     "pool": ["T2_3", "T2_5"],
//!     "max_cable": 3
//! }"#).unwrap();
//! let cert = solve_family(&spec).unwrap();
//! assert!(verify_family(&cert, &spec).unwrap().passed);
//! let report = nonsolvability_certificate(&cert, &spec, &[1]).unwrap();
//! assert_eq!(report.verdict, "PASS");
//! assert!(report.ledger_sum > 1);
//! ```

mod certificate;
mod solve;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::blanchfield::{mod_p_nontrivial, vector_from_json, AlexanderModule, LaurentVector};
use crate::descriptor::KnotDescriptor;
use crate::error::{Error, Result};
use crate::exactnum::{is_prime, LaurentPoly, Ring};

pub use certificate::{
    nonsolvability_certificate, verify_family, Check, FamilyCertificate, MemberCertificate,
    NonsolvabilityReport, PointValue, VerificationReport,
};
pub use solve::solve_family;

/// Rationals as strings (`"3/2"`); integers are accepted on input.
pub(crate) mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::String(s) => s
                .trim()
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("bad rational `{s}`"))),
            serde_json::Value::Number(n) if n.is_i64() => {
                Ok(BigRational::from_integer(n.as_i64().unwrap().into()))
            }
            other => Err(serde::de::Error::custom(format!(
                "expected a rational, got {other}"
            ))),
        }
    }
}

fn default_max_cable() -> u64 {
    10
}

fn yes() -> bool {
    true
}

/// One infection stage `J_{k+1} = K_k(eta_k, J_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfectionStage {
    /// The carrier `K_k`; must have a Seifert matrix.
    pub carrier: KnotDescriptor,
    #[serde(default)]
    pub linking_number: i64,
    /// Class of `eta_k` in the rational Alexander module, as a coordinate
    /// vector. Defaults to the generator of a cyclic module.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<serde_json::Value>,
    /// Declared, not checked.
    #[serde(default = "yes")]
    pub slice: bool,
}

/// What was checked about a stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageRecord {
    pub carrier: String,
    pub linking_number: i64,
    pub generates: bool,
    pub alexander: String,
    pub slice_assumed: bool,
}

impl InfectionStage {
    pub fn new(carrier: KnotDescriptor) -> Self {
        InfectionStage {
            carrier,
            linking_number: 0,
            eta: None,
            slice: true,
        }
    }

    /// Checks linking number zero, the slice declaration and that `eta`
    /// generates a nontrivial rational Alexander module.
    pub fn check(&self, index: usize) -> Result<StageRecord> {
        let invalid = |reason: String| Error::StageInvalid {
            stage: index,
            reason,
        };
        if self.linking_number != 0 {
            return Err(invalid(format!(
                "linking number {} is not 0",
                self.linking_number
            )));
        }
        if !self.slice {
            return Err(invalid("carrier is not declared slice".into()));
        }
        let a = self
            .carrier
            .seifert_matrix()
            .map_err(|e| invalid(e.to_string()))?;
        let module = AlexanderModule::from_seifert(&a, Ring::Rationals)
            .map_err(|e| invalid(e.to_string()))?;
        if module.is_trivial() {
            return Err(invalid("carrier has trivial Alexander module".into()));
        }
        let eta: LaurentVector = match &self.eta {
            Some(v) => vector_from_json(&v.to_string(), Ring::Rationals)
                .map_err(|e| invalid(e.to_string()))?,
            None if module.is_cyclic() => module.generators().remove(0),
            None => {
                return Err(invalid(
                    "Alexander module is not cyclic; eta must be given".into(),
                ))
            }
        };
        let generates = module.generates(&eta).map_err(|e| invalid(e.to_string()))?;
        if !generates {
            return Err(invalid("eta does not generate the Alexander module".into()));
        }
        Ok(StageRecord {
            carrier: self.carrier.to_expr(),
            linking_number: 0,
            generates,
            alexander: a.alexander_poly(Ring::Integers).to_string(),
            slice_assumed: true,
        })
    }
}

/// Input of [`solve_family`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    /// `n`
    pub depth: u32,
    pub primes: Vec<u64>,
    /// `L`, an upper bound for the Cheeger-Gromov constants of the carriers.
    #[serde(with = "rational_str")]
    pub cheeger_gromov_bound: BigRational,
    pub stages: Vec<InfectionStage>,
    /// Descriptor expressions of the atoms the search may use.
    pub pool: Vec<String>,
    /// Cables `(r, 1)` of pool atoms with `2 <= r <= max_cable` join the pool.
    #[serde(default = "default_max_cable")]
    pub max_cable: u64,
}

impl FamilySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: FamilySpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    /// `n * L`
    pub fn threshold(&self) -> BigRational {
        &self.cheeger_gromov_bound * BigRational::from_integer(self.depth.into())
    }

    /// Checks the numeric invariants and every stage.
    pub fn validate(&self) -> Result<Vec<StageRecord>> {
        let bad = |s: String| Err(Error::InvalidSpec(s));
        if self.depth == 0 {
            return bad("depth n must be at least 1".into());
        }
        if !self.cheeger_gromov_bound.is_positive() {
            return bad(format!(
                "the bound L = {} must be positive",
                self.cheeger_gromov_bound
            ));
        }
        if self.primes.is_empty() {
            return bad("no primes given".into());
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return bad(format!("{p} is not prime"));
        }
        if self.primes.windows(2).any(|w| w[0] >= w[1]) {
            return bad("primes must be strictly increasing".into());
        }
        if self.stages.len() != self.depth as usize {
            return bad(format!(
                "{} stages for depth {}",
                self.stages.len(),
                self.depth
            ));
        }
        if self.pool.is_empty() {
            return bad("empty atom pool".into());
        }
        let records = self
            .stages
            .iter()
            .enumerate()
            .map(|(k, s)| s.check(k))
            .collect::<Result<Vec<_>>>()?;
        let a0 = self.stages[0].carrier.seifert_matrix()?;
        let top = a0.alexander_poly(Ring::Integers).leading_coeff().abs();
        for &p in &self.primes {
            if BigRational::from_integer(p.into()) <= top {
                return bad(format!(
                    "prime {p} does not exceed the top coefficient {top} of the stage-0 carrier"
                ));
            }
            if !mod_p_nontrivial(&a0, p)? {
                return bad(format!(
                    "the stage-0 Alexander polynomial is a unit mod {p}"
                ));
            }
        }
        Ok(records)
    }
}

/// The `count` smallest primes exceeding every `|coefficient|` of `delta`.
pub fn choose_primes(delta: &LaurentPoly, count: usize) -> Vec<u64> {
    let mut p = delta
        .max_abs_coeff()
        .ceil()
        .to_integer()
        .to_u64()
        .expect("coefficients fit in u64");
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        p += 1;
        if is_prime(p) {
            out.push(p);
        }
    }
    out
}

/// `J_n` from `J_0` by infecting along the stages in order; stage `k` gets
/// depth tag `k`.
pub fn assemble_iterated(j0: &KnotDescriptor, stages: &[InfectionStage]) -> Result<KnotDescriptor> {
    let mut acc = j0.clone();
    for (k, stage) in stages.iter().enumerate() {
        stage.check(k)?;
        acc = KnotDescriptor::infect(stage.carrier.clone(), k as u32, acc);
    }
    Ok(acc)
}

/// Whether `J_0` meets the hypotheses under which the iterated satellite is
/// `(n)`-solvable with vanishing PTFA signature obstruction: `Arf(J_0) = 0`
/// and a signature function of integral zero.
pub fn iterated_hypotheses_hold(j0: &KnotDescriptor) -> Result<bool> {
    Ok(j0.arf()? == 0 && j0.signature_step()?.integral().is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(Ring::Integers, 0, c)
    }

    #[test]
    fn prime_choice() {
        assert_eq!(choose_primes(&poly(&[1, -1, 1]), 3), vec![2, 3, 5]);
        assert_eq!(choose_primes(&poly(&[3, -5, 3]), 2), vec![7, 11]);
        assert_eq!(choose_primes(&poly(&[1]), 1), vec![2]);
    }

    fn spec() -> FamilySpec {
        FamilySpec {
            depth: 1,
            primes: vec![2, 3],
            cheeger_gromov_bound: BigRational::from_integer(1.into()),
            stages: vec![InfectionStage::new(
                KnotDescriptor::atom("metabolic").unwrap(),
            )],
            pool: vec!["T2_3".into()],
            max_cable: 2,
        }
    }

    #[test]
    fn spec_validation() {
        assert!(spec().validate().is_ok());
        let mut s = spec();
        s.cheeger_gromov_bound = BigRational::zero();
        assert!(matches!(s.validate(), Err(Error::InvalidSpec(_))));
        let mut s = spec();
        s.primes = vec![3, 2];
        assert!(s.validate().is_err());
        let mut s = spec();
        s.stages[0].linking_number = 1;
        assert!(matches!(
            s.validate(),
            Err(Error::StageInvalid { stage: 0, .. })
        ));
        let text = spec().to_json();
        assert_eq!(FamilySpec::from_json(&text).unwrap(), spec());
    }

    #[test]
    fn iterated_structure() {
        let j0 = KnotDescriptor::atom("T2_3").unwrap();
        assert_eq!(assemble_iterated(&j0, &[]).unwrap(), j0);
        let stage = InfectionStage::new(KnotDescriptor::atom("metabolic").unwrap());
        let j2 = assemble_iterated(&j0, &[stage.clone(), stage.clone()]).unwrap();
        assert_eq!(j2.infection_nesting(), 2);
        match &j2 {
            KnotDescriptor::Infection { depth, .. } => assert_eq!(*depth, 1),
            _ => panic!("expected an infection"),
        }
        let trefoil_carrier = InfectionStage::new(KnotDescriptor::atom("unknot").unwrap());
        assert!(matches!(
            assemble_iterated(&j0, &[trefoil_carrier]),
            Err(Error::StageInvalid { .. })
        ));
        assert!(!iterated_hypotheses_hold(&j0).unwrap());
    }
}
