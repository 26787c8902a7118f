//! The decision procedure: normal forms, per-disjunct decisions, sentence
//! combinations and witness checking.

use std::collections::HashSet;

use serde_json::{json, Value};

use crate::algebraic::AlgReal;
use crate::error::{Error, Result};
use crate::formula::{Formula, QzFormula, Quant};
use crate::membership::{
    decide_bounded_cell, decide_unbounded_cell, decide_zero_cell, degree_constraints,
    eval_membership, saturate, solve_degree, MemberAtom, MembershipSystem,
};
use crate::poly::Poly;
use crate::rcell::{decompose_and_filter, sample_point, RCell, RealAtom, RealFormula};
use crate::trace::{ProofTrace, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Most integer candidates examined in one bounded cell.
    pub max_integers: u64,
    /// Most disjuncts in a normal form.
    pub max_dnf: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_integers: 1_000_000, max_dnf: 4096 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub cells: usize,
    pub disjuncts: usize,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub truth: bool,
    /// A satisfying point of a true existential, or a counterexample to a
    /// false universal.
    pub witness: Option<AlgReal>,
    pub trace: ProofTrace,
    pub stats: Stats,
}

impl Verdict {
    /// The verdict record; `elapsed_ms` is `null` unless given.
    pub fn to_json(&self, elapsed_ms: Option<u64>) -> Value {
        json!({
            "verdict": self.truth,
            "witness": self.witness.as_ref().map_or(Value::Null, AlgReal::to_json),
            "proof": self.trace.to_json(),
            "stats": {
                "cells": self.stats.cells,
                "disjuncts": self.stats.disjuncts,
                "elapsed_ms": elapsed_ms,
            },
        })
    }
}

/// A literal of the negation normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Lit {
    Real(RealAtom),
    Member(MemberAtom),
}

/// Negation normal form as nested and/or over literals; constants folded.
#[derive(Clone, Debug)]
enum Nnf {
    Const(bool),
    Lit(Lit),
    And(Vec<Nnf>),
    Or(Vec<Nnf>),
}

fn nnf(f: &Formula, negated: bool) -> Nnf {
    match f {
        Formula::Const(b) => Nnf::Const(*b != negated),
        Formula::Real { lhs, rel, rhs } => {
            let p = lhs - rhs;
            let rel = if negated { rel.negate() } else { *rel };
            if p.is_constant() {
                let c = p.coeff(0);
                Nnf::Const(rel.holds(c.cmp(&num_bigint::BigInt::from(0))))
            } else {
                Nnf::Lit(Lit::Real(RealAtom::new(p, rel)))
            }
        }
        Formula::Member(m) => Nnf::Lit(Lit::Member(if negated { m.negate() } else { *m })),
        Formula::Not(g) => nnf(g, !negated),
        Formula::And(fs) | Formula::Or(fs) => {
            let parts = fs.iter().map(|g| nnf(g, negated)).collect();
            if matches!(f, Formula::And(_)) != negated {
                Nnf::And(parts)
            } else {
                Nnf::Or(parts)
            }
        }
        Formula::Quant(..) => panic!("normal forms are for quantifier-free formulas"),
    }
}

/// Disjunctive normal form as clause lists, deduplicated within clauses.
fn dnf(f: &Nnf, cap: usize) -> Result<Vec<Vec<Lit>>> {
    let limit = |n: usize| {
        if n > cap {
            Err(Error::ResourceLimit(format!("normal form exceeds {cap} disjuncts")))
        } else {
            Ok(())
        }
    };
    match f {
        Nnf::Const(true) => Ok(vec![Vec::new()]),
        Nnf::Const(false) => Ok(Vec::new()),
        Nnf::Lit(l) => Ok(vec![vec![l.clone()]]),
        Nnf::Or(fs) => {
            let mut out = Vec::new();
            for g in fs {
                let part = dnf(g, cap)?;
                if part.iter().any(Vec::is_empty) {
                    return Ok(vec![Vec::new()]);
                }
                out.extend(part);
                limit(out.len())?;
            }
            Ok(out)
        }
        Nnf::And(fs) => {
            let mut acc: Vec<Vec<Lit>> = vec![Vec::new()];
            for g in fs {
                let rhs = dnf(g, cap)?;
                limit(acc.len().saturating_mul(rhs.len()))?;
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for a in &acc {
                    for b in &rhs {
                        let mut c = a.clone();
                        for l in b {
                            if !c.contains(l) {
                                c.push(l.clone());
                            }
                        }
                        next.push(c);
                    }
                }
                acc = next;
            }
            Ok(acc)
        }
    }
}

/// Splits a quantifier-free formula into disjuncts `phi /\ gamma`.
pub fn normalize(f: &Formula, max_dnf: usize) -> Result<Vec<(RealFormula, MembershipSystem)>> {
    let clauses = dnf(&nnf(f, false), max_dnf)?;
    let mut out: Vec<(RealFormula, MembershipSystem)> = Vec::with_capacity(clauses.len());
    let mut seen = HashSet::new();
    for clause in clauses {
        let mut reals = Vec::new();
        let mut gamma = MembershipSystem::new();
        for l in clause {
            match l {
                Lit::Real(a) => reals.push(a),
                Lit::Member(m) => {
                    gamma.insert(m);
                }
            }
        }
        let pair = (RealFormula::conj(reals), gamma);
        if seen.insert(pair.clone()) {
            out.push(pair);
        }
    }
    Ok(out)
}

/// Decides one disjunct on its own.
pub fn decide_conjunct(phi: &RealFormula, gamma: &MembershipSystem, limits: &Limits) -> Result<Verdict> {
    let mut trace = ProofTrace::new();
    let mut stats = Stats { disjuncts: 1, ..Stats::default() };
    let witness = conjunct(0, 1, phi, gamma, limits, &mut trace, &mut stats)?;
    let truth = witness.is_some();
    trace.push(Step::Conclusion { truth });
    Ok(Verdict { truth, witness, trace, stats })
}

fn conjunct(
    index: usize,
    total: usize,
    phi: &RealFormula,
    gamma: &MembershipSystem,
    limits: &Limits,
    trace: &mut ProofTrace,
    stats: &mut Stats,
) -> Result<Option<AlgReal>> {
    trace.push(Step::Problem { index, total, phi: phi.clone(), gamma: gamma.clone() });
    if !gamma.is_empty() {
        let closed = saturate(gamma);
        trace.push(Step::Saturation {
            before: gamma.clone(),
            after: closed.system.clone(),
            contradictory: closed.contradictory,
        });
        if closed.contradictory {
            return Ok(None);
        }
        let dc = degree_constraints(&closed);
        let least = solve_degree(&dc);
        trace.push(Step::DegreeSolve { constraints: dc, least });
        if least.is_none() {
            return Ok(None);
        }
    }
    let (cells, sat) = decompose_and_filter(phi);
    stats.cells += cells.len();
    trace.push(Step::Decomposition { cells });
    trace.push(Step::CellFilter { satisfying: sat.clone() });
    if gamma.is_empty() {
        let w = sat.first().map(sample_point);
        if let Some(w) = &w {
            trace.push(Step::WitnessFound { witness: w.clone() });
        }
        return check_witness(phi, gamma, w);
    }
    for cell in &sat {
        trace.push(Step::CellCheck { cell: cell.clone() });
        let found = match cell {
            RCell::Point(a) => decide_zero_cell(gamma, a, trace),
            RCell::Open { lower: Some(_), upper: Some(_) } => {
                decide_bounded_cell(gamma, cell, limits.max_integers, trace)?
            }
            RCell::Open { .. } => decide_unbounded_cell(gamma, cell, trace)?,
        };
        if found.is_some() {
            return check_witness(phi, gamma, found);
        }
        let reason = if cell.is_point() {
            "the constraints fail at this point"
        } else {
            "no point of this cell meets the constraints"
        };
        trace.push(Step::CellRefuted { cell: cell.clone(), reason: reason.into() });
    }
    Ok(None)
}

fn check_witness(phi: &RealFormula, gamma: &MembershipSystem, w: Option<AlgReal>) -> Result<Option<AlgReal>> {
    if let Some(a) = &w {
        let real_ok = phi.atoms().iter().all(|at| at.eval(a));
        if !real_ok || !eval_membership(gamma, a) {
            return Err(Error::Internal(format!("witness {a} does not satisfy {phi} /\\ {gamma}")));
        }
    }
    Ok(w)
}

struct Run<'a> {
    limits: &'a Limits,
    var: &'a str,
    trace: ProofTrace,
    stats: Stats,
    subs: usize,
}

impl Run<'_> {
    fn sentence(&mut self, f: &Formula) -> Result<(bool, Option<AlgReal>)> {
        match f {
            Formula::Quant(Quant::Exists, body) => self.exists(body),
            Formula::Quant(Quant::Forall, body) => {
                let neg = Formula::not((**body).clone());
                let shown = Formula::Quant(Quant::Exists, Box::new(neg.clone()));
                self.trace.push(Step::Duality { negated: shown.display_in(self.var).to_string() });
                let (t, w) = self.exists(&neg)?;
                Ok((!t, w))
            }
            g if g.has_free_atoms() => self.exists(g),
            Formula::Const(b) => Ok((*b, None)),
            Formula::Not(g) => Ok((!self.closed(g)?, None)),
            Formula::And(fs) => {
                for g in fs {
                    if !self.closed(g)? {
                        return Ok((false, None));
                    }
                }
                Ok((true, None))
            }
            Formula::Or(fs) => {
                for g in fs {
                    if self.closed(g)? {
                        return Ok((true, None));
                    }
                }
                Ok((false, None))
            }
            Formula::Real { .. } | Formula::Member(_) => unreachable!("free atoms handled above"),
        }
    }

    /// Truth of a closed sub-sentence, traced as its own block.
    fn closed(&mut self, f: &Formula) -> Result<bool> {
        if !matches!(f, Formula::Quant(..)) {
            return Ok(self.sentence(f)?.0);
        }
        let index = self.subs;
        self.subs += 1;
        self.trace.push(Step::SubSentence { index, formula: f.display_in(self.var).to_string() });
        let (truth, _) = self.sentence(f)?;
        self.trace.push(Step::SubResult { index, truth });
        Ok(truth)
    }

    /// Replaces quantified sub-formulas by their truth values.
    fn close_subsentences(&mut self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::Quant(..) => Formula::Const(self.closed(f)?),
            Formula::Not(g) => Formula::not(self.close_subsentences(g)?),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| self.close_subsentences(g)).collect::<Result<_>>()?),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| self.close_subsentences(g)).collect::<Result<_>>()?),
            other => other.clone(),
        })
    }

    fn exists(&mut self, body: &Formula) -> Result<(bool, Option<AlgReal>)> {
        let body = self.close_subsentences(body)?;
        let parts = normalize(&body, self.limits.max_dnf)?;
        self.stats.disjuncts += parts.len();
        let total = parts.len();
        for (i, (phi, gamma)) in parts.iter().enumerate() {
            let w = conjunct(i, total, phi, gamma, self.limits, &mut self.trace, &mut self.stats)?;
            if let Some(w) = w {
                if !body.eval_at(&w) {
                    return Err(Error::Internal(format!("witness {w} does not satisfy the formula")));
                }
                return Ok((true, Some(w)));
            }
        }
        Ok((false, None))
    }
}

/// Decides a formula. Without a leading quantifier it is read
/// existentially, unless every atom sits under some quantifier, in which
/// case it is a boolean combination of closed sentences.
pub fn decide(f: &QzFormula, limits: &Limits) -> Result<Verdict> {
    let mut run = Run { limits, var: &f.var, trace: ProofTrace::new(), stats: Stats::default(), subs: 0 };
    let (truth, witness) = run.sentence(&f.body)?;
    run.trace.push(Step::Conclusion { truth });
    Ok(Verdict { truth, witness, trace: run.trace, stats: run.stats })
}

/// Convenience: parse and decide with default limits.
pub fn decide_str(src: &str) -> Result<Verdict> {
    decide(&crate::parse::parse(src)?, &Limits::default())
}

/// `p rel 0` as a formula, for building inputs programmatically.
pub fn real_atom(p: Poly, rel: crate::rcell::Rel) -> Formula {
    Formula::real(p, rel, Poly::zero())
}
