//! Formula syntax trees and their concrete-syntax printer.

use std::fmt;

use crate::algebraic::AlgReal;
use crate::membership::{eval_membership, MemberAtom, MembershipSystem};
use crate::poly::Poly;
use crate::rcell::Rel;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quant {
    Exists,
    Forall,
}

impl fmt::Display for Quant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quant::Exists => "exists",
            Quant::Forall => "forall",
        })
    }
}

/// Formula over a single variable. `And`/`Or` hold at least two children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    /// `lhs rel rhs`, sides kept as written.
    Real { lhs: Poly, rel: Rel, rhs: Poly },
    Member(MemberAtom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Quant(Quant, Box<Formula>),
}

impl Formula {
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Or(vec![Formula::not(a), b])
    }

    pub fn real(lhs: Poly, rel: Rel, rhs: Poly) -> Formula {
        Formula::Real { lhs, rel, rhs }
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Quant(..) => false,
            Formula::Not(g) => g.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            _ => true,
        }
    }

    /// True when some atom lies outside every quantifier.
    pub fn has_free_atoms(&self) -> bool {
        match self {
            Formula::Real { .. } | Formula::Member(_) => true,
            Formula::Const(_) | Formula::Quant(..) => false,
            Formula::Not(g) => g.has_free_atoms(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_free_atoms),
        }
    }

    /// Truth at a point. Panics on quantifiers.
    pub fn eval_at(&self, a: &AlgReal) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Real { lhs, rel, rhs } => rel.holds(a.sign_of(&(lhs - rhs))),
            Formula::Member(m) => eval_membership(&MembershipSystem::from_atoms([*m]), a),
            Formula::Not(g) => !g.eval_at(a),
            Formula::And(fs) => fs.iter().all(|g| g.eval_at(a)),
            Formula::Or(fs) => fs.iter().any(|g| g.eval_at(a)),
            Formula::Quant(..) => panic!("eval_at on a quantified formula"),
        }
    }

    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Printer { f: self, var }
    }
}

struct Printer<'a> {
    f: &'a Formula,
    var: &'a str,
}

impl Printer<'_> {
    fn child<'b>(&'b self, f: &'b Formula) -> Printer<'b> {
        Printer { f, var: self.var }
    }

    fn write_operand(&self, out: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
        match g {
            Formula::And(_) | Formula::Or(_) | Formula::Quant(..) => write!(out, "({})", self.child(g)),
            _ => write!(out, "{}", self.child(g)),
        }
    }
}

impl fmt::Display for Printer<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.f {
            Formula::Const(true) => out.write_str("true"),
            Formula::Const(false) => out.write_str("false"),
            Formula::Real { lhs, rel, rhs } => {
                write!(out, "{} {rel} {}", lhs.display_in(self.var), rhs.display_in(self.var))
            }
            Formula::Member(m) => out.write_str(&m.display_in(self.var)),
            Formula::Not(g) => {
                out.write_str("~")?;
                self.write_operand(out, g)
            }
            Formula::And(fs) | Formula::Or(fs) => {
                let op = if matches!(self.f, Formula::And(_)) { " /\\ " } else { " \\/ " };
                for (i, g) in fs.iter().enumerate() {
                    if i > 0 {
                        out.write_str(op)?;
                    }
                    self.write_operand(out, g)?;
                }
                Ok(())
            }
            Formula::Quant(q, body) => write!(out, "{q} {}. {}", self.var, self.child(body)),
        }
    }
}

/// A parsed formula together with the name of its variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QzFormula {
    pub var: String,
    pub body: Formula,
}

impl QzFormula {
    pub fn new(var: impl Into<String>, body: Formula) -> Self {
        QzFormula { var: var.into(), body }
    }
}

impl fmt::Display for QzFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.body.display_in(&self.var))
    }
}
