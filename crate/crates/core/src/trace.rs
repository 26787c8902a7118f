//! Proof traces: the ordered record of what the decision procedure did.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebraic::{AlgReal, RrtReport};
use crate::arith::fmt_rat;
use crate::membership::{DegreeConstraints, MemberAtom, MembershipSystem};
use crate::rcell::{RCell, RealFormula};

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// A sub-sentence of a boolean combination of closed sentences.
    SubSentence { index: usize, formula: String },
    SubResult { index: usize, truth: bool },
    /// A universal sentence decided through its negated existential.
    Duality { negated: String },
    /// One disjunct `phi /\ gamma` of the normal form.
    Problem { index: usize, total: usize, phi: RealFormula, gamma: MembershipSystem },
    Saturation { before: MembershipSystem, after: MembershipSystem, contradictory: bool },
    DegreeSolve { constraints: DegreeConstraints, least: Option<u32> },
    Decomposition { cells: Vec<RCell> },
    CellFilter { satisfying: Vec<RCell> },
    CellCheck { cell: RCell },
    Evaluate { atom: MemberAtom, alpha: AlgReal },
    Power { alpha: AlgReal, n: u32, result: AlgReal },
    RrtCheck { value: AlgReal, report: RrtReport },
    IntegerRange { d: u32, lo: BigInt, hi: BigInt, count: BigInt },
    IntegerScan { d: u32, examined: u64, found: Option<BigInt> },
    WitnessFound { witness: AlgReal },
    CellRefuted { cell: RCell, reason: String },
    Conclusion { truth: bool },
}

impl Step {
    pub fn to_json(&self) -> Value {
        let cells = |cs: &[RCell]| Value::Array(cs.iter().map(RCell::to_json).collect());
        match self {
            Step::SubSentence { index, formula } => {
                json!({ "step": "sub_sentence", "index": index, "formula": formula })
            }
            Step::SubResult { index, truth } => {
                json!({ "step": "sub_result", "index": index, "truth": truth })
            }
            Step::Duality { negated } => json!({ "step": "duality", "negated": negated }),
            Step::Problem { index, total, phi, gamma } => json!({
                "step": "problem",
                "disjunct": index,
                "of": total,
                "phi": phi.to_string(),
                "gamma": gamma.to_json(),
            }),
            Step::Saturation { before, after, contradictory } => json!({
                "step": "saturation",
                "before": before.to_json(),
                "after": after.to_json(),
                "contradictory": contradictory,
            }),
            Step::DegreeSolve { constraints, least } => json!({
                "step": "degree_solve",
                "must_divide": constraints.must_divide,
                "must_not_divide": constraints.must_not_divide,
                "least": least,
            }),
            Step::Decomposition { cells: cs } => {
                json!({ "step": "decomposition", "count": cs.len(), "cells": cells(cs) })
            }
            Step::CellFilter { satisfying } => json!({
                "step": "cell_filter",
                "count": satisfying.len(),
                "cells": cells(satisfying),
            }),
            Step::CellCheck { cell } => json!({ "step": "cell_check", "cell": cell.to_json() }),
            Step::Evaluate { atom, alpha } => json!({
                "step": "evaluate",
                "constraint": atom.to_string(),
                "alpha": alpha.to_json(),
            }),
            Step::Power { alpha, n, result } => json!({
                "step": "power",
                "alpha": alpha.to_json(),
                "n": n,
                "result": result.to_json(),
            }),
            Step::RrtCheck { value, report } => json!({
                "step": "rrt_check",
                "value": value.to_json(),
                "poly": report.poly.to_json(),
                "interval": [fmt_rat(&report.lo), fmt_rat(&report.hi)],
                "candidates": report.candidates.iter().map(fmt_rat).collect::<Vec<_>>(),
                "root": report.root.as_ref().map(fmt_rat),
            }),
            Step::IntegerRange { d, lo, hi, count } => json!({
                "step": "integer_range",
                "d": d,
                "lo": lo.to_string(),
                "hi": hi.to_string(),
                "count": count.to_string(),
            }),
            Step::IntegerScan { d, examined, found } => json!({
                "step": "integer_scan",
                "d": d,
                "examined": examined,
                "found": found.as_ref().map(|z| z.to_string()),
            }),
            Step::WitnessFound { witness } => {
                json!({ "step": "witness_found", "witness": witness.to_json() })
            }
            Step::CellRefuted { cell, reason } => {
                json!({ "step": "cell_refuted", "cell": cell.to_json(), "reason": reason })
            }
            Step::Conclusion { truth } => json!({ "step": "conclusion", "truth": truth }),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProofTrace {
    steps: Vec<Step>,
}

impl ProofTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: Step) {
        self.steps.push(s);
    }

    pub fn extend(&mut self, other: ProofTrace) {
        self.steps.extend(other.steps);
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.steps.iter().map(Step::to_json).collect())
    }
}
