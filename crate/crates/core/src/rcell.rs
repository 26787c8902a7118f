//! Sign-invariant cells of the real line.
//!
//! The roots of the polynomials in a formula, together with `0`, split the
//! line into points and open intervals. Every polynomial has constant sign
//! on each open piece, so one sample point decides the real-algebra part of
//! the formula on the whole cell.

use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use serde_json::{json, Value};

use crate::algebraic::AlgReal;
use crate::arith::{self, BigRat};
use crate::poly::{isolate_real_roots, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

impl Rel {
    pub const ALL: [Rel; 6] = [Rel::Lt, Rel::Le, Rel::Eq, Rel::Ge, Rel::Gt, Rel::Ne];

    /// Whether a value with sign `s` satisfies `value rel 0`.
    pub fn holds(self, s: Ordering) -> bool {
        match self {
            Rel::Lt => s == Ordering::Less,
            Rel::Le => s != Ordering::Greater,
            Rel::Eq => s == Ordering::Equal,
            Rel::Ge => s != Ordering::Less,
            Rel::Gt => s == Ordering::Greater,
            Rel::Ne => s != Ordering::Equal,
        }
    }

    pub fn negate(self) -> Rel {
        match self {
            Rel::Lt => Rel::Ge,
            Rel::Le => Rel::Gt,
            Rel::Eq => Rel::Ne,
            Rel::Ge => Rel::Lt,
            Rel::Gt => Rel::Le,
            Rel::Ne => Rel::Eq,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Eq => "=",
            Rel::Ge => ">=",
            Rel::Gt => ">",
            Rel::Ne => "!=",
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// `poly rel 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RealAtom {
    pub poly: Poly,
    pub rel: Rel,
}

impl RealAtom {
    pub fn new(poly: Poly, rel: Rel) -> Self {
        RealAtom { poly, rel }
    }

    pub fn eval(&self, a: &AlgReal) -> bool {
        self.rel.holds(a.sign_of(&self.poly))
    }

    pub fn negate(&self) -> RealAtom {
        RealAtom::new(self.poly.clone(), self.rel.negate())
    }
}

impl fmt::Display for RealAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.rel)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealFormula {
    Const(bool),
    Atom(RealAtom),
    And(Vec<RealFormula>),
    Or(Vec<RealFormula>),
}

impl RealFormula {
    /// Conjunction of atoms; `True` when empty.
    pub fn conj(atoms: impl IntoIterator<Item = RealAtom>) -> RealFormula {
        let mut v: Vec<_> = atoms.into_iter().map(RealFormula::Atom).collect();
        match v.len() {
            0 => RealFormula::Const(true),
            1 => v.pop().unwrap(),
            _ => RealFormula::And(v),
        }
    }

    pub fn atoms(&self) -> Vec<&RealAtom> {
        let mut out = Vec::new();
        self.walk(&mut out);
        out
    }

    fn walk<'a>(&'a self, out: &mut Vec<&'a RealAtom>) {
        match self {
            RealFormula::Const(_) => {}
            RealFormula::Atom(a) => out.push(a),
            RealFormula::And(fs) | RealFormula::Or(fs) => fs.iter().for_each(|f| f.walk(out)),
        }
    }
}

impl fmt::Display for RealFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, fs: &[RealFormula], op: &str| {
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                match g {
                    RealFormula::And(_) | RealFormula::Or(_) => write!(f, "({g})")?,
                    _ => write!(f, "{g}")?,
                }
            }
            Ok(())
        };
        match self {
            RealFormula::Const(b) => write!(f, "{}", if *b { "true" } else { "false" }),
            RealFormula::Atom(a) => write!(f, "{a}"),
            RealFormula::And(fs) => join(f, fs, "/\\"),
            RealFormula::Or(fs) => join(f, fs, "\\/"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub enum RCell {
    Point(AlgReal),
    /// `None` marks an infinite side.
    Open {
        lower: Option<AlgReal>,
        upper: Option<AlgReal>,
    },
}

impl RCell {
    pub fn is_point(&self) -> bool {
        matches!(self, RCell::Point(_))
    }

    pub fn is_bounded(&self) -> bool {
        match self {
            RCell::Point(_) => true,
            RCell::Open { lower, upper } => lower.is_some() && upper.is_some(),
        }
    }

    /// True when every point of the cell is `<= 0`.
    pub fn is_nonpositive(&self) -> bool {
        match self {
            RCell::Point(a) => a.signum() != Ordering::Greater,
            RCell::Open { upper, .. } => upper
                .as_ref()
                .is_some_and(|u| u.signum() != Ordering::Greater),
        }
    }

    /// Image under `x -> -x`.
    pub fn mirror(&self) -> RCell {
        match self {
            RCell::Point(a) => RCell::Point(a.negate()),
            RCell::Open { lower, upper } => RCell::Open {
                lower: upper.as_ref().map(AlgReal::negate),
                upper: lower.as_ref().map(AlgReal::negate),
            },
        }
    }

    pub fn contains(&self, x: &AlgReal) -> bool {
        match self {
            RCell::Point(a) => a.compare(x) == Ordering::Equal,
            RCell::Open { lower, upper } => {
                lower.as_ref().map_or(true, |l| l.compare(x) == Ordering::Less)
                    && upper.as_ref().map_or(true, |u| x.compare(u) == Ordering::Less)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let bound = |b: &Option<AlgReal>| b.as_ref().map_or(Value::Null, AlgReal::to_json);
        match self {
            RCell::Point(a) => json!({ "kind": "point", "value": a.to_json() }),
            RCell::Open { lower, upper } => {
                json!({ "kind": "open", "lower": bound(lower), "upper": bound(upper) })
            }
        }
    }
}

impl fmt::Display for RCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RCell::Point(a) => write!(f, "[{a}]"),
            RCell::Open { lower, upper } => {
                match lower {
                    Some(l) => write!(f, "({l}, ")?,
                    None => write!(f, "(-inf, ")?,
                }
                match upper {
                    Some(u) => write!(f, "{u})"),
                    None => write!(f, "+inf)"),
                }
            }
        }
    }
}

impl fmt::Debug for RCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Distinct square-free parts of the nonconstant polynomials in `phi`, in
/// order of first appearance.
pub fn collect_polys(phi: &RealFormula) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::new();
    for a in phi.atoms() {
        if a.poly.is_constant() {
            continue;
        }
        let sf = a.poly.square_free();
        if !out.contains(&sf) {
            out.push(sf);
        }
    }
    out
}

/// Cells induced by the roots of `polys`, with `0` always a point cell.
pub fn decompose(polys: &[Poly]) -> Vec<RCell> {
    let mut roots: Vec<AlgReal> = Vec::new();
    for p in polys {
        let sf = p.square_free();
        for (lo, hi) in isolate_real_roots(&sf).expect("nonzero polynomial") {
            roots.push(AlgReal::new(&sf, &lo, &hi).expect("isolating interval"));
        }
    }
    roots.push(AlgReal::zero());
    roots.sort_by(AlgReal::compare);
    roots.dedup_by(|a, b| a.compare(b) == Ordering::Equal);

    let mut cells = Vec::with_capacity(2 * roots.len() + 1);
    let mut lower = None;
    for r in roots {
        cells.push(RCell::Open { lower: lower.take(), upper: Some(r.clone()) });
        cells.push(RCell::Point(r.clone()));
        lower = Some(r);
    }
    cells.push(RCell::Open { lower, upper: None });
    cells
}

/// A point of the cell; rational for open cells.
pub fn sample_point(c: &RCell) -> AlgReal {
    match c {
        RCell::Point(a) => a.clone(),
        RCell::Open { lower: None, upper: None } => AlgReal::zero(),
        RCell::Open { lower: Some(l), upper: None } => {
            AlgReal::from_rat(arith::int(l.floor()) + BigRat::one())
        }
        RCell::Open { lower: None, upper: Some(u) } => {
            AlgReal::from_rat(arith::int(u.ceil()) - BigRat::one())
        }
        RCell::Open { lower: Some(l), upper: Some(u) } => {
            let (a, b) = l.separating_bounds(u);
            AlgReal::from_rat(arith::simplest_between(&a, &b))
        }
    }
}

pub fn eval_real_formula(phi: &RealFormula, a: &AlgReal) -> bool {
    match phi {
        RealFormula::Const(b) => *b,
        RealFormula::Atom(at) => at.eval(a),
        RealFormula::And(fs) => fs.iter().all(|f| eval_real_formula(f, a)),
        RealFormula::Or(fs) => fs.iter().any(|f| eval_real_formula(f, a)),
    }
}

/// The decomposition of `phi` and the cells on which it holds.
pub fn decompose_and_filter(phi: &RealFormula) -> (Vec<RCell>, Vec<RCell>) {
    let cells = decompose(&collect_polys(phi));
    let sat = cells
        .iter()
        .filter(|c| eval_real_formula(phi, &sample_point(c)))
        .cloned()
        .collect();
    (cells, sat)
}

pub fn satisfying_cells(phi: &RealFormula) -> Vec<RCell> {
    decompose_and_filter(phi).1
}
