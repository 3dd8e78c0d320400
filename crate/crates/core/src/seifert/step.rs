use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::Zero;
use serde::Serialize;

use super::matrix::SeifertMatrix;
use super::roots::circle_roots;
use crate::error::{Error, Result};
use crate::exactnum::{cos_enclosure, Ring, UnitCirclePoint};

/// A breakpoint of a signature function on the upper half circle.
///
/// `at` is `None` when the value at the point itself is not determined (the
/// exceptional points of a cable reparametrization).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Jump {
    pub point: UnitCirclePoint,
    pub before: i64,
    pub at: Option<i64>,
    pub after: i64,
}

/// Integer-valued, conjugation-symmetric step function on the unit circle.
///
/// Only the closed upper half circle is stored; the value at `1` is `0` and the
/// lower half mirrors the upper one. Breakpoints lie in `(0, pi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepFunction {
    jumps: Vec<Jump>,
    /// value on the arc from `1` to the first breakpoint (or the whole half circle)
    initial: i64,
}

/// One arc of the upper half circle with its constant value; the endpoints are
/// fractions of a full turn in `[0, 1/2]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: Ratio<i64>,
    pub end: Ratio<i64>,
    pub value: i64,
}

fn half() -> Ratio<i64> {
    Ratio::new(1, 2)
}

impl StepFunction {
    pub fn zero() -> Self {
        StepFunction {
            jumps: Vec::new(),
            initial: 0,
        }
    }

    /// Builds the function from its breakpoints and an evaluator. Arc values
    /// are sampled at arc midpoints; `eval_at` gives the value at a breakpoint.
    pub fn sample(
        breakpoints: impl IntoIterator<Item = UnitCirclePoint>,
        mut eval_arc: impl FnMut(&UnitCirclePoint) -> i64,
        mut eval_at: impl FnMut(&UnitCirclePoint) -> Option<i64>,
    ) -> Self {
        let points: BTreeSet<UnitCirclePoint> = breakpoints
            .into_iter()
            .map(|w| w.upper_representative())
            .filter(|w| !w.is_one())
            .collect();
        let points: Vec<UnitCirclePoint> = points.into_iter().collect();
        let mut edges: Vec<Ratio<i64>> = vec![Ratio::zero()];
        edges.extend(points.iter().map(|w| w.turns()));
        edges.push(half());
        let arc_values: Vec<i64> = edges
            .windows(2)
            .map(|e| {
                if e[0] == e[1] {
                    0
                } else {
                    eval_arc(&UnitCirclePoint::from_turns((e[0] + e[1]) / 2))
                }
            })
            .collect();
        let initial = arc_values[0];
        let jumps = points
            .iter()
            .enumerate()
            .map(|(i, w)| Jump {
                point: *w,
                before: arc_values[i],
                at: eval_at(w),
                after: arc_values[i + 1],
            })
            .collect();
        StepFunction { jumps, initial }
    }

    pub fn jumps(&self) -> &[Jump] {
        &self.jumps
    }

    /// Breakpoints on the upper half circle, ascending.
    pub fn breakpoints(&self) -> Vec<UnitCirclePoint> {
        self.jumps.iter().map(|j| j.point).collect()
    }

    /// Breakpoints where the value actually changes.
    pub fn proper_jumps(&self) -> Vec<UnitCirclePoint> {
        self.jumps
            .iter()
            .filter(|j| j.before != j.after || j.at != Some(j.before))
            .map(|j| j.point)
            .collect()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::with_capacity(self.jumps.len() + 1);
        let mut start = Ratio::zero();
        let mut value = self.initial;
        for j in &self.jumps {
            let end = j.point.turns();
            if end > start {
                out.push(Arc { start, end, value });
            }
            start = end;
            value = j.after;
        }
        if start < half() {
            out.push(Arc {
                start,
                end: half(),
                value,
            });
        }
        out
    }

    /// Value at `w`; `None` only at undetermined breakpoints.
    pub fn eval(&self, w: &UnitCirclePoint) -> Option<i64> {
        let w = w.upper_representative();
        if w.is_one() {
            return Some(0);
        }
        let t = w.turns();
        let mut value = self.initial;
        for j in &self.jumps {
            let jt = j.point.turns();
            if jt == t {
                return j.at;
            }
            if jt > t {
                break;
            }
            value = j.after;
        }
        Some(value)
    }

    /// Value on the arc containing `w`, or the one-sided limits at a breakpoint.
    fn eval_generic(&self, w: &UnitCirclePoint) -> i64 {
        self.eval(w).expect("generic point")
    }

    pub fn neg(&self) -> Self {
        StepFunction {
            jumps: self
                .jumps
                .iter()
                .map(|j| Jump {
                    point: j.point,
                    before: -j.before,
                    at: j.at.map(|v| -v),
                    after: -j.after,
                })
                .collect(),
            initial: -self.initial,
        }
    }

    pub fn add(&self, other: &StepFunction) -> Self {
        let points: Vec<UnitCirclePoint> = self
            .breakpoints()
            .into_iter()
            .chain(other.breakpoints())
            .collect();
        StepFunction::sample(
            points,
            |w| self.eval_generic(w) + other.eval_generic(w),
            |w| Some(self.eval(w)? + other.eval(w)?),
        )
    }

    /// `w -> f(w^r)`, the signature function of an `(r, 1)`-cable away from
    /// its exceptional points. Values at the new breakpoints are left open
    /// unless the breakpoint has prime-power order, where `f(w^r)` is known to
    /// be the value of the cable.
    pub fn pullback(&self, r: u64) -> Self {
        assert!(r >= 1);
        if r == 1 {
            return self.clone();
        }
        let mut points = Vec::new();
        for b in self.breakpoints() {
            for base in [b.turns(), Ratio::from_integer(1) - b.turns()] {
                for k in 0..r as i64 {
                    let t = (base + Ratio::from_integer(k)) / Ratio::from_integer(r as i64);
                    if t <= half() {
                        points.push(UnitCirclePoint::from_turns(t));
                    }
                }
            }
        }
        StepFunction::sample(
            points,
            |w| self.eval_generic(&w.pow(r as i64)),
            |w| {
                if w.has_prime_power_order() {
                    self.eval(&w.pow(r as i64))
                } else {
                    None
                }
            },
        )
    }

    /// `int_{S^1} f` for the Haar measure of total mass 1.
    pub fn integral(&self) -> BigRational {
        let mut acc = Ratio::<i64>::zero();
        for arc in self.arcs() {
            acc += (arc.end - arc.start) * Ratio::from_integer(arc.value);
        }
        let acc = acc * Ratio::from_integer(2);
        BigRational::new(BigInt::from(*acc.numer()), BigInt::from(*acc.denom()))
    }

    pub fn is_identically_zero(&self) -> bool {
        self.initial == 0
            && self
                .jumps
                .iter()
                .all(|j| j.before == 0 && j.after == 0 && j.at == Some(0))
    }
}

/// Exact normalized integral of a signature step function.
pub fn signature_integral(f: &StepFunction) -> BigRational {
    f.integral()
}

/// Breakpoint of a sampled signature function.
#[derive(Clone, Debug, Serialize)]
pub enum SampledBreak {
    RootOfUnity(UnitCirclePoint),
    /// `2 cos(theta)` lies in `[lo, hi]`
    Isolated {
        lo: String,
        hi: String,
        approx_turns: f64,
    },
}

/// Signature function with some breakpoints at irrational angles: arc values
/// are exact (evaluated at rational-angle points certified to lie between
/// neighbouring breakpoints), breakpoint positions are isolating intervals.
#[derive(Clone, Debug, Serialize)]
pub struct SampledSignature {
    pub breaks: Vec<SampledBreak>,
    /// `(sample point, value)` for each arc, in order of angle
    pub arcs: Vec<(UnitCirclePoint, i64)>,
}

/// Full Levine-Tristram signature function of a Seifert matrix.
///
/// The breakpoints are exactly the unit-circle roots of the Alexander
/// polynomial. If some of them are not roots of unity the exact step function
/// does not exist and a [`SampledSignature`] is returned in the error.
pub fn signature_function(a: &SeifertMatrix) -> Result<StepFunction> {
    let delta = a.alexander_poly(Ring::Integers);
    let roots = circle_roots(&delta);
    if roots.irrational.is_empty() {
        return Ok(StepFunction::sample(
            roots.rational,
            |w| a.levine_tristram(w),
            |w| Some(a.levine_tristram(w)),
        ));
    }
    Err(Error::IrrationalJumpAngle(Box::new(sampled_signature(
        a,
        &roots.rational,
        &roots.irrational,
    ))))
}

fn sampled_signature(
    a: &SeifertMatrix,
    rational: &[UnitCirclePoint],
    irrational: &[(BigRational, BigRational)],
) -> SampledSignature {
    let two = BigRational::from_integer(BigInt::from(2));
    type Item = (f64, SampledBreak, Option<(BigRational, BigRational)>);
    let mut items: Vec<Item> = Vec::new();
    for w in rational {
        let t = w.turns();
        items.push((
            *t.numer() as f64 / *t.denom() as f64,
            SampledBreak::RootOfUnity(*w),
            None,
        ));
    }
    for (lo, hi) in irrational {
        use num_traits::ToPrimitive;
        let mid = ((lo + hi) / &two).to_f64().unwrap();
        let turns = (mid / 2.0).clamp(-1.0, 1.0).acos() / (2.0 * std::f64::consts::PI);
        items.push((
            turns,
            SampledBreak::Isolated {
                lo: lo.to_string(),
                hi: hi.to_string(),
                approx_turns: turns,
            },
            Some((lo.clone(), hi.clone())),
        ));
    }
    items.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());

    // x = 2cos(theta) decreases along the upper half circle
    let in_gap = |w: &UnitCirclePoint, left: Option<&Item>, right: Option<&Item>| -> bool {
        let (mid, rad) = cos_enclosure(w.numer(), w.order(), 96);
        let x_lo = (&mid - &rad) * &two;
        let x_hi = (&mid + &rad) * &two;
        let t = w.turns();
        let ok_left = match left {
            None => true,
            Some((_, SampledBreak::RootOfUnity(p), _)) => t > p.turns(),
            Some((_, _, Some((lo, _)))) => x_hi < *lo,
            _ => unreachable!(),
        };
        let ok_right = match right {
            None => true,
            Some((_, SampledBreak::RootOfUnity(p), _)) => t < p.turns(),
            Some((_, _, Some((_, hi)))) => x_lo > *hi,
            _ => unreachable!(),
        };
        ok_left && ok_right && !w.is_one() && w.in_upper_half()
    };

    let mut arcs = Vec::new();
    for i in 0..=items.len() {
        let left = if i == 0 { None } else { items.get(i - 1) };
        let right = items.get(i);
        let lo_t = left.map_or(0.0, |x| x.0);
        let hi_t = right.map_or(0.5, |x| x.0);
        let target = (lo_t + hi_t) / 2.0;
        let mut chosen = None;
        'search: for den in 2..=1u64 << 16 {
            let num = (target * den as f64).round() as i64;
            for cand in [num, num - 1, num + 1] {
                if cand <= 0 {
                    continue;
                }
                let w = UnitCirclePoint::new(cand, den).unwrap();
                if in_gap(&w, left, right) {
                    chosen = Some(w);
                    break 'search;
                }
            }
        }
        let w = chosen.expect("a rational angle exists in every open arc");
        arcs.push((w, a.levine_tristram(&w)));
    }
    SampledSignature {
        breaks: items.into_iter().map(|x| x.1).collect(),
        arcs,
    }
}
