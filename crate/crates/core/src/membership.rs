//! Rationality and integrality constraints on powers of the variable.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::algebraic::AlgReal;
use crate::arith::{self, int};
use crate::error::{Error, Result};
use crate::rcell::RCell;
use crate::trace::{ProofTrace, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumSet {
    Q,
    Z,
}

impl fmt::Display for NumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NumSet::Q => "Q",
            NumSet::Z => "Z",
        })
    }
}

/// `x^power in set`, or `notin` when `positive` is false.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberAtom {
    pub power: u32,
    pub set: NumSet,
    pub positive: bool,
}

impl MemberAtom {
    pub fn new(power: u32, set: NumSet, positive: bool) -> Self {
        assert!(power >= 1, "membership powers start at 1");
        MemberAtom { power, set, positive }
    }

    pub fn negate(self) -> Self {
        MemberAtom { positive: !self.positive, ..self }
    }

    pub fn display_in(&self, var: &str) -> String {
        let base = match self.power {
            1 => var.to_string(),
            n => format!("{var}^{n}"),
        };
        let op = if self.positive { "in" } else { "notin" };
        format!("{base} {op} {}", self.set)
    }
}

impl fmt::Display for MemberAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MembershipSystem {
    pub pos_q: BTreeSet<u32>,
    pub neg_q: BTreeSet<u32>,
    pub pos_z: BTreeSet<u32>,
    pub neg_z: BTreeSet<u32>,
}

impl MembershipSystem {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = MemberAtom>) -> Self {
        let mut s = Self::new();
        for a in atoms {
            s.insert(a);
        }
        s
    }

    pub fn insert(&mut self, a: MemberAtom) -> bool {
        self.set_mut(a.set, a.positive).insert(a.power)
    }

    fn set_mut(&mut self, set: NumSet, positive: bool) -> &mut BTreeSet<u32> {
        match (set, positive) {
            (NumSet::Q, true) => &mut self.pos_q,
            (NumSet::Q, false) => &mut self.neg_q,
            (NumSet::Z, true) => &mut self.pos_z,
            (NumSet::Z, false) => &mut self.neg_z,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pos_q.is_empty() && self.neg_q.is_empty() && self.pos_z.is_empty() && self.neg_z.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pos_q.len() + self.neg_q.len() + self.pos_z.len() + self.neg_z.len()
    }

    /// Constraints ordered by power, then `Q` before `Z`, then `in` first.
    pub fn atoms(&self) -> Vec<MemberAtom> {
        let mut v = Vec::with_capacity(self.len());
        for (set, positive, ws) in [
            (NumSet::Q, true, &self.pos_q),
            (NumSet::Q, false, &self.neg_q),
            (NumSet::Z, true, &self.pos_z),
            (NumSet::Z, false, &self.neg_z),
        ] {
            v.extend(ws.iter().map(|&w| MemberAtom::new(w, set, positive)));
        }
        v.sort_by_key(|a| (a.power, a.set, !a.positive));
        v
    }

    pub fn max_power(&self) -> u32 {
        self.atoms().iter().map(|a| a.power).max().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.atoms().iter().map(|a| Value::String(a.to_string())).collect())
    }
}

impl fmt::Display for MembershipSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("true");
        }
        let parts: Vec<String> = self.atoms().iter().map(|a| a.to_string()).collect();
        f.write_str(&parts.join(" /\\ "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedSystem {
    pub system: MembershipSystem,
    pub contradictory: bool,
}

/// Least closure of `g` under the five saturation rules.
pub fn saturate(g: &MembershipSystem) -> ClosedSystem {
    let mut s = g.clone();
    loop {
        let before = s.len();
        // 1: x^w notin Q  =>  x^w notin Z
        s.neg_z.extend(s.neg_q.clone());
        // 2: x^w in Z  =>  x^w in Q
        s.pos_q.extend(s.pos_z.clone());
        if !s.pos_z.is_empty() {
            // 3: some power integral and some power not  =>  x notin Q
            if !s.neg_z.is_empty() {
                s.neg_q.insert(1);
            }
            // 4 and 5: with an integral power, Q and Z agree on every power
            s.pos_z.extend(s.pos_q.clone());
            s.neg_q.extend(s.neg_z.clone());
        }
        if s.len() == before {
            break;
        }
    }
    let contradictory = s.pos_q.intersection(&s.neg_q).next().is_some()
        || s.pos_z.intersection(&s.neg_z).next().is_some();
    ClosedSystem { system: s, contradictory }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DegreeConstraints {
    pub must_divide: BTreeSet<u32>,
    pub must_not_divide: BTreeSet<u32>,
}

impl DegreeConstraints {
    pub fn satisfied_by(&self, d: u32) -> bool {
        d >= 1
            && self.must_divide.iter().all(|w| w % d == 0)
            && self.must_not_divide.iter().all(|w| w % d != 0)
    }

    /// Every solution in ascending order, when the set is finite.
    pub fn all_solutions(&self) -> Option<Vec<u32>> {
        let g = self.must_divide.iter().fold(0u32, |g, &w| g.gcd(&w));
        (g > 0).then(|| (1..=g).filter(|&d| self.satisfied_by(d)).collect())
    }
}

impl fmt::Display for DegreeConstraints {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.must_divide.iter().map(|w| format!("d | {w}")).collect();
        parts.extend(self.must_not_divide.iter().map(|w| format!("d !| {w}")));
        if parts.is_empty() {
            return f.write_str("true");
        }
        f.write_str(&parts.join(", "))
    }
}

pub fn degree_constraints(closed: &ClosedSystem) -> DegreeConstraints {
    DegreeConstraints {
        must_divide: closed.system.pos_q.clone(),
        must_not_divide: closed.system.neg_q.clone(),
    }
}

/// Least `d >= 1` meeting the constraints.
pub fn solve_degree(dc: &DegreeConstraints) -> Option<u32> {
    let limit = match (dc.must_divide.first(), dc.must_not_divide.last()) {
        (Some(&m), _) => m,
        (None, Some(&m)) => m + 1,
        (None, None) => 1,
    };
    (1..=limit).find(|&d| dc.satisfied_by(d))
}

pub fn eval_membership(g: &MembershipSystem, a: &AlgReal) -> bool {
    eval_membership_traced(g, a, &mut ProofTrace::new())
}

/// Checks each constraint of `g` at `a` in order, recording the powers and
/// rational-root tests, and stops at the first failure.
pub fn eval_membership_traced(g: &MembershipSystem, a: &AlgReal, trace: &mut ProofTrace) -> bool {
    let mut last: Option<(u32, AlgReal)> = None;
    for atom in g.atoms() {
        trace.push(Step::Evaluate { atom, alpha: a.clone() });
        let value = match &last {
            Some((w, v)) if *w == atom.power => v.clone(),
            _ => {
                let v = a.pow(atom.power);
                if atom.power > 1 {
                    trace.push(Step::Power { alpha: a.clone(), n: atom.power, result: v.clone() });
                }
                last = Some((atom.power, v.clone()));
                v
            }
        };
        let report = value.rrt_check();
        let member = match (&report.root, atom.set) {
            (None, _) => false,
            (Some(_), NumSet::Q) => true,
            (Some(q), NumSet::Z) => q.is_integer(),
        };
        trace.push(Step::RrtCheck { value, report });
        if member != atom.positive {
            return false;
        }
    }
    true
}

pub fn decide_zero_cell(g: &MembershipSystem, a: &AlgReal, trace: &mut ProofTrace) -> Option<AlgReal> {
    eval_membership_traced(g, a, trace).then(|| a.clone())
}

/// Degree and closure shared by the one-dimensional cell procedures.
struct Plan {
    closed: MembershipSystem,
    dc: DegreeConstraints,
    least: u32,
}

fn plan(g: &MembershipSystem) -> Option<Plan> {
    let closed = saturate(g);
    if closed.contradictory {
        return None;
    }
    let dc = degree_constraints(&closed);
    let least = solve_degree(&dc)?;
    Some(Plan { closed: closed.system, dc, least })
}

impl Plan {
    /// Degree for witnesses of the form `(p/q)^(1/d)`: `k + 1` with no
    /// positive rationality constraint, the least solution otherwise.
    fn ratio_degree(&self) -> u32 {
        if self.closed.pos_q.is_empty() {
            self.closed.max_power() + 1
        } else {
            self.least
        }
    }
}

/// Splits off the mirror image for cells left of zero.
fn positive_side(c: &RCell) -> (RCell, bool) {
    if c.is_nonpositive() {
        (c.mirror(), true)
    } else {
        (c.clone(), false)
    }
}

/// Checks a witness built on the positive side against the original cell
/// and constraints, and records it.
fn accept(
    g: &MembershipSystem,
    cell: &RCell,
    w: AlgReal,
    mirrored: bool,
    trace: &mut ProofTrace,
) -> Result<AlgReal> {
    let w = if mirrored { w.negate() } else { w };
    if !cell.contains(&w) {
        return Err(Error::Internal(format!("witness {w} lies outside {cell}")));
    }
    if !eval_membership_traced(g, &w, trace) {
        return Err(Error::Internal(format!("witness {w} fails {g}")));
    }
    trace.push(Step::WitnessFound { witness: w.clone() });
    Ok(w)
}

fn nth_root(q: &arith::BigRat, d: u32) -> AlgReal {
    AlgReal::nth_root(q, d).expect("positive radicand")
}

/// Cell `(a, +inf)` or `(-inf, b)`.
pub fn decide_unbounded_cell(
    g: &MembershipSystem,
    cell: &RCell,
    trace: &mut ProofTrace,
) -> Result<Option<AlgReal>> {
    let (pos, mirrored) = positive_side(cell);
    let RCell::Open { lower: Some(a), upper: None } = &pos else {
        return Err(Error::Internal(format!("{cell} is not a half-line")));
    };
    let Some(plan) = plan(g) else { return Ok(None) };
    let w = if plan.closed.pos_z.is_empty() {
        let d = plan.ratio_degree();
        let lo = int(a.pow(d).floor() + 1);
        let hi = &lo + int(1);
        nth_root(&arith::prime_ratio_in(&lo, &hi), d)
    } else {
        let p = arith::next_prime(&a.pow(plan.least).floor());
        nth_root(&int(p), plan.least)
    };
    accept(g, cell, w, mirrored, trace).map(Some)
}

/// First and last integer strictly between `a` and `b`.
fn integer_span(a: &AlgReal, b: &AlgReal) -> (BigInt, BigInt) {
    (a.floor() + 1, b.ceil() - 1)
}

/// All integers `z` with `a < z < b`, refusing more than `cap` of them.
pub fn integers_strictly_between(a: &AlgReal, b: &AlgReal, cap: u64) -> Result<Vec<BigInt>> {
    let (lo, hi) = integer_span(a, b);
    if hi < lo {
        return Ok(Vec::new());
    }
    let count = &hi - &lo + 1;
    if count > BigInt::from(cap) {
        return Err(too_many(&count, cap));
    }
    let mut out = Vec::new();
    let mut z = lo;
    while z <= hi {
        out.push(z.clone());
        z += 1;
    }
    Ok(out)
}

fn too_many(count: &BigInt, cap: u64) -> Error {
    Error::ResourceLimit(format!("{count} integer candidates exceed the limit of {cap}"))
}

/// Whether `z^(1/d)` meets every constraint, by integer arithmetic alone:
/// `z^(w/d)` is rational iff `z` is a perfect `(d / gcd(w, d))`-th power,
/// and then it is an integer.
fn root_meets(z: &BigInt, d: u32, closed: &MembershipSystem) -> bool {
    closed.atoms().iter().all(|a| {
        let f = d / a.power.gcd(&d);
        let r = z.nth_root(f);
        let perfect = num_traits::pow(r, f as usize) == *z;
        perfect == a.positive
    })
}

/// Cell `(a, b)` with both ends finite.
pub fn decide_bounded_cell(
    g: &MembershipSystem,
    cell: &RCell,
    max_integers: u64,
    trace: &mut ProofTrace,
) -> Result<Option<AlgReal>> {
    let (pos, mirrored) = positive_side(cell);
    let RCell::Open { lower: Some(a), upper: Some(b) } = &pos else {
        return Err(Error::Internal(format!("{cell} is not a bounded interval")));
    };
    let Some(plan) = plan(g) else { return Ok(None) };
    if plan.closed.pos_z.is_empty() {
        let d = plan.ratio_degree();
        let (u, l) = a.pow(d).separating_bounds(&b.pow(d));
        let w = nth_root(&arith::prime_ratio_in(&u, &l), d);
        return accept(g, cell, w, mirrored, trace).map(Some);
    }
    // An integral power forces x = z^(1/d) with z an integer and d the least
    // exponent making x rational, so every admissible d must be tried.
    let degrees = plan.dc.all_solutions().expect("positive rationality constraint present");
    for d in degrees {
        let (a_d, b_d) = (a.pow(d), b.pow(d));
        let (lo, hi) = integer_span(&a_d, &b_d);
        let count = if hi < lo { BigInt::zero() } else { &hi - &lo + 1 };
        trace.push(Step::IntegerRange { d, lo: lo.clone(), hi: hi.clone(), count: count.clone() });
        if count.is_zero() {
            continue;
        }
        if count > BigInt::from(max_integers) {
            return Err(too_many(&count, max_integers));
        }
        if let Some(p) = arith::find_prime_in(&int(&lo - 1), &int(&hi + 1)) {
            let w = nth_root(&int(p), d);
            return accept(g, cell, w, mirrored, trace).map(Some);
        }
        let mut z = lo;
        let mut examined = 0u64;
        while z <= hi {
            examined += 1;
            if root_meets(&z, d, &plan.closed) {
                trace.push(Step::IntegerScan { d, examined, found: Some(z.clone()) });
                let w = nth_root(&int(z), d);
                return accept(g, cell, w, mirrored, trace).map(Some);
            }
            z += BigInt::one();
        }
        trace.push(Step::IntegerScan { d, examined, found: None });
    }
    Ok(None)
}

pub fn closed_to_json(c: &ClosedSystem) -> Value {
    json!({ "constraints": c.system.to_json(), "contradictory": c.contradictory })
}
