use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::descriptor::KnotDescriptor;
use crate::error::{Error, Result};

use super::solve::{point, Point};
use super::{assemble_iterated, rational_str, FamilySpec, StageRecord};

/// `sigma(w_p^r)`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValue {
    pub prime: u64,
    pub r: u64,
    pub sigma: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MemberCertificate {
    /// 1-based, matching the prime `p_index`.
    pub index: usize,
    pub prime: u64,
    /// `J^i_0`
    pub descriptor: KnotDescriptor,
    /// `J^i_n`, the iterated satellite.
    pub iterated: KnotDescriptor,
    /// Signatures at `w_j^r` for `j <= i`, `0 <= r < p_j`.
    pub values: Vec<PointValue>,
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    pub arf: u8,
    #[serde(with = "rational_str")]
    pub integral: BigRational,
    /// `sum_{r < p_i} sigma(w_i^r)`
    pub ledger_sum: i64,
    /// `ledger_sum - nL`, with multiplier `C = 1`.
    #[serde(with = "rational_str")]
    pub margin: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyCertificate {
    pub depth: u32,
    pub primes: Vec<u64>,
    #[serde(with = "rational_str")]
    pub cheeger_gromov_bound: BigRational,
    pub stages: Vec<StageRecord>,
    pub members: Vec<MemberCertificate>,
    pub assumptions: Vec<String>,
}

impl FamilyCertificate {
    pub(crate) fn new(
        spec: &FamilySpec,
        stages: Vec<StageRecord>,
        members: Vec<MemberCertificate>,
    ) -> Self {
        FamilyCertificate {
            depth: spec.depth,
            primes: spec.primes.clone(),
            cheeger_gromov_bound: spec.cheeger_gromov_bound.clone(),
            stages,
            members,
            assumptions: vec![
                "every carrier is slice".into(),
                "the Cheeger-Gromov constants of the carriers are bounded by L".into(),
            ],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

struct Conditions {
    c1: bool,
    c2: bool,
    c3: bool,
    ledger_sum: i64,
    margin: BigRational,
    problems: Vec<(&'static str, String)>,
}

fn conditions(
    spec: &FamilySpec,
    i: usize,
    values: &BTreeMap<Point, i64>,
    arf: u8,
    integral: &BigRational,
) -> Conditions {
    let p = spec.primes[i];
    let threshold = spec.threshold();
    let mut problems = Vec::new();
    let v = |pt: Point| values.get(&pt).copied();
    let top = v((p, 1));
    let top_conj = v((p, p - 1));
    let mut c1 = match (top, top_conj) {
        (Some(a), Some(b)) if a == b && BigRational::from_integer(a.into()) > threshold => true,
        _ => {
            problems.push(("C1", format!("sigma(w_{p}) = {top:?}, sigma(w_{p}^-1) = {top_conj:?}, need equal and > {threshold}")));
            false
        }
    };
    for r in 2..p.saturating_sub(1) {
        if v((p, r)) != Some(0) {
            problems.push(("C1", format!("sigma(w_{p}^{r}) = {:?}, need 0", v((p, r)))));
            c1 = false;
        }
    }
    let mut c2 = true;
    for &q in &spec.primes[..i] {
        for r in 0..q {
            if v((q, r)) != Some(0) {
                problems.push(("C2", format!("sigma(w_{q}^{r}) = {:?}, need 0", v((q, r)))));
                c2 = false;
            }
        }
    }
    let c3 = arf == 0 && integral.is_zero();
    if !c3 {
        problems.push(("C3", format!("Arf = {arf}, integral = {integral}")));
    }
    let ledger_sum: i64 = (0..p).map(|r| v((p, r)).unwrap_or(0)).sum();
    let margin = BigRational::from_integer(ledger_sum.into()) - threshold;
    Conditions {
        c1,
        c2,
        c3,
        ledger_sum,
        margin,
        problems,
    }
}

fn required_points(spec: &FamilySpec, i: usize) -> Vec<Point> {
    spec.primes[..=i]
        .iter()
        .flat_map(|&q| (0..q).map(move |r| (q, r)))
        .collect()
}

fn evaluate(j: &KnotDescriptor, pts: &[Point]) -> Result<BTreeMap<Point, i64>> {
    pts.iter()
        .map(|&pt| Ok((pt, j.sigma_eval(&point(pt.0, pt.1))?)))
        .collect()
}

pub(crate) fn certify_member(
    spec: &FamilySpec,
    i: usize,
    j: KnotDescriptor,
) -> Result<MemberCertificate> {
    let values = evaluate(&j, &required_points(spec, i))?;
    let arf = j.arf()?;
    let integral = j.signature_step()?.integral();
    let c = conditions(spec, i, &values, arf, &integral);
    Ok(MemberCertificate {
        index: i + 1,
        prime: spec.primes[i],
        iterated: assemble_iterated(&j, &spec.stages)?,
        descriptor: j,
        values: values
            .into_iter()
            .map(|((prime, r), sigma)| PointValue { prime, r, sigma })
            .collect(),
        c1: c.c1,
        c2: c.c2,
        c3: c.c3,
        arf,
        integral,
        ledger_sum: c.ledger_sum,
        margin: c.margin,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Re-derives every stored value and condition from the descriptors.
pub fn verify_family(cert: &FamilyCertificate, spec: &FamilySpec) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let mut check = |name: String, passed: bool, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };
    let stages = spec.validate()?;
    check(
        "header".into(),
        cert.depth == spec.depth
            && cert.primes == spec.primes
            && cert.cheeger_gromov_bound == spec.cheeger_gromov_bound,
        format!(
            "n = {}, primes = {:?}, L = {}",
            cert.depth, cert.primes, cert.cheeger_gromov_bound
        ),
    );
    check(
        "stages".into(),
        cert.stages == stages,
        format!("{} stage(s) rechecked", stages.len()),
    );
    check(
        "members".into(),
        cert.members.len() == spec.primes.len(),
        format!(
            "{} member(s) for {} prime(s)",
            cert.members.len(),
            spec.primes.len()
        ),
    );
    for (i, m) in cert.members.iter().enumerate().take(spec.primes.len()) {
        let tag = format!("J^{}", i + 1);
        check(
            format!("{tag} index"),
            m.index == i + 1 && m.prime == spec.primes[i],
            format!("index {}, prime {}", m.index, m.prime),
        );
        let pts = required_points(spec, i);
        let fresh = evaluate(&m.descriptor, &pts)?;
        let stored: BTreeMap<Point, i64> =
            m.values.iter().map(|v| ((v.prime, v.r), v.sigma)).collect();
        let mut value_problems = Vec::new();
        for (&pt, &sigma) in &fresh {
            match stored.get(&pt) {
                Some(&s) if s == sigma => {}
                other => {
                    let cond = if pt.0 == spec.primes[i] { "C1" } else { "C2" };
                    value_problems.push(format!(
                        "{cond}: stored sigma(w_{}^{}) = {other:?}, recomputed {sigma}",
                        pt.0, pt.1
                    ));
                }
            }
        }
        if stored.len() != fresh.len() {
            value_problems.push(format!(
                "{} stored values for {} required points",
                stored.len(),
                fresh.len()
            ));
        }
        check(
            format!("{tag} values"),
            value_problems.is_empty(),
            value_problems.join("; "),
        );
        let arf = m.descriptor.arf()?;
        let integral = m.descriptor.signature_step()?.integral();
        check(
            format!("{tag} C3 data"),
            arf == m.arf && integral == m.integral,
            format!("Arf = {arf}, integral = {integral}"),
        );
        let c = conditions(spec, i, &fresh, arf, &integral);
        let detail = |name: &str| {
            c.problems
                .iter()
                .filter(|(n, _)| *n == name)
                .map(|(_, d)| d.as_str())
                .collect::<Vec<_>>()
                .join("; ")
        };
        check(format!("{tag} C1"), c.c1 && m.c1, detail("C1"));
        check(format!("{tag} C2"), c.c2 && m.c2, detail("C2"));
        check(format!("{tag} C3"), c.c3 && m.c3, detail("C3"));
        check(
            format!("{tag} ledger"),
            c.ledger_sum == m.ledger_sum && c.margin == m.margin,
            format!("sum = {}, margin = {}", c.ledger_sum, c.margin),
        );
        let iterated = assemble_iterated(&m.descriptor, &spec.stages)?;
        check(
            format!("{tag} iterated"),
            iterated == m.iterated,
            iterated.to_expr(),
        );
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(VerificationReport { passed, checks })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonsolvabilityReport {
    pub verdict: String,
    /// Coefficients after dropping the sign convention: the first nonzero one
    /// is positive.
    pub coefficients: Vec<i64>,
    pub mirrored: bool,
    /// 1-based index of the first nonzero coefficient.
    pub leading_index: usize,
    pub prime: u64,
    pub ledger_sum: i64,
    #[serde(with = "rational_str")]
    pub bound: BigRational,
    pub multiplier: u32,
    #[serde(with = "rational_str")]
    pub margin: BigRational,
    pub statement: String,
}

/// Checks `C * sum_r sigma_{J^k}(w_k^r) > nL` with `C = 1` for the first
/// member `k` with nonzero coefficient. Larger `C` only widens the gap.
///
/// The inequality is recomputed from the stored descriptor before the rest
/// of the certificate is verified, so a bound that is too large is reported
/// as [`Error::MarginViolated`].
pub fn nonsolvability_certificate(
    cert: &FamilyCertificate,
    spec: &FamilySpec,
    coefficients: &[i64],
) -> Result<NonsolvabilityReport> {
    if coefficients.len() > cert.members.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients for {} members",
            coefficients.len(),
            cert.members.len()
        )));
    }
    let Some(k) = coefficients.iter().position(|&a| a != 0) else {
        return Err(Error::InvalidInput("all coefficients are zero".into()));
    };
    let mirrored = coefficients[k] < 0;
    let coefficients: Vec<i64> = coefficients
        .iter()
        .map(|&a| if mirrored { -a } else { a })
        .collect();
    let m = &cert.members[k];
    let p = m.prime;
    let ledger_sum: i64 = (0..p)
        .map(|r| m.descriptor.sigma_eval(&point(p, r)))
        .sum::<Result<i64>>()?;
    let bound = spec.threshold();
    let margin = BigRational::from_integer(ledger_sum.into()) - &bound;
    if !margin.is_positive() {
        return Err(Error::MarginViolated {
            sum: ledger_sum.to_string(),
            bound: bound.to_string(),
        });
    }
    let report = verify_family(cert, spec)?;
    if !report.passed {
        let names: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
        return Err(Error::InvalidInput(format!(
            "certificate does not verify: {}",
            names.join(", ")
        )));
    }
    let terms: Vec<String> = coefficients
        .iter()
        .enumerate()
        .filter(|(_, &a)| a != 0)
        .map(|(i, a)| format!("{a} J^{}_{}", i + 1, spec.depth))
        .collect();
    Ok(NonsolvabilityReport {
        verdict: "PASS".into(),
        statement: format!("{} is not ({}.5)-solvable", terms.join(" # "), spec.depth),
        coefficients,
        mirrored,
        leading_index: k + 1,
        prime: p,
        ledger_sum,
        bound,
        multiplier: 1,
        margin,
    })
}
