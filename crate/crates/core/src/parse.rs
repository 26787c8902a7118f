//! Concrete syntax.
//!
//! ```text
//! formula := [quant] expr
//! quant   := ("exists" | "forall") IDENT "."
//! expr    := expr "\/" term | term
//! term    := term "/\" factor | factor
//! factor  := "~" factor | "(" expr ")" | atom | factor "->" factor | quant expr
//! atom    := poly REL poly | IDENT ["^" NAT] ("in" | "notin") ("Q" | "Z")
//! ```
//!
//! `->` is right-associative and stands for `~a \/ b`. Polynomials use
//! integer literals, the variable, `+ - * ^`, parentheses and implicit
//! multiplication (`3x^2`). `#` starts a comment. The Unicode forms
//! `∧ ∨ ¬ → ∈ ∉ ℚ ℤ ∃ ∀ ≤ ≥ ≠` are accepted as well.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::formula::{Formula, QzFormula, Quant};
use crate::membership::{MemberAtom, NumSet};
use crate::poly::Poly;
use crate::rcell::Rel;

/// Largest exponent accepted in polynomials and membership atoms.
pub const MAX_EXPONENT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    MultipleVariables { first: String, second: String },
    NonIntegerCoefficient(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.col)?;
        match &self.kind {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::MultipleVariables { first, second } => {
                write!(f, "multiple variables: `{first}` and `{second}`")
            }
            ParseErrorKind::NonIntegerCoefficient(t) => write!(f, "non-integer coefficient `{t}`"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Exists,
    Forall,
    In,
    NotIn,
    SetQ,
    SetZ,
    True,
    False,
    Dot,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Caret,
    Tilde,
    And,
    Or,
    Arrow,
    Rel(Rel),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Int(n) => return write!(f, "`{n}`"),
            Tok::Exists => "exists",
            Tok::Forall => "forall",
            Tok::In => "in",
            Tok::NotIn => "notin",
            Tok::SetQ => "Q",
            Tok::SetZ => "Z",
            Tok::True => "true",
            Tok::False => "false",
            Tok::Dot => ".",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Caret => "^",
            Tok::Tilde => "~",
            Tok::And => "/\\",
            Tok::Or => "\\/",
            Tok::Arrow => "->",
            Tok::Rel(r) => r.symbol(),
            Tok::Eof => "end of input",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, kind| ParseError { line, col, kind };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '0'..='9' => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j + 1 < chars.len() && chars[j] == '.' && chars[j + 1].is_ascii_digit() {
                    let mut k = j + 1;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    let text: String = chars[i..k].iter().collect();
                    return Err(err(l0, c0, ParseErrorKind::NonIntegerCoefficient(text)));
                }
                let text: String = chars[i..j].iter().collect();
                adv = j - i;
                Some(Tok::Int(text.parse().expect("digits")))
            }
            c if is_word_start(c) => {
                let mut j = i;
                while j < chars.len() && (is_word_start(chars[j]) || chars[j].is_ascii_digit()) {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                adv = j - i;
                Some(match word.as_str() {
                    "exists" => Tok::Exists,
                    "forall" => Tok::Forall,
                    "in" => Tok::In,
                    "notin" => Tok::NotIn,
                    "Q" => Tok::SetQ,
                    "Z" => Tok::SetZ,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                })
            }
            _ => {
                let next = chars.get(i + 1).copied();
                let (t, n) = match (c, next) {
                    ('/', Some('\\')) => (Tok::And, 2),
                    ('\\', Some('/')) => (Tok::Or, 2),
                    ('-', Some('>')) => (Tok::Arrow, 2),
                    ('<', Some('=')) => (Tok::Rel(Rel::Le), 2),
                    ('>', Some('=')) => (Tok::Rel(Rel::Ge), 2),
                    ('!', Some('=')) => (Tok::Rel(Rel::Ne), 2),
                    ('/', _) => {
                        return Err(err(l0, c0, ParseErrorKind::NonIntegerCoefficient("/".into())))
                    }
                    ('<', _) => (Tok::Rel(Rel::Lt), 1),
                    ('>', _) => (Tok::Rel(Rel::Gt), 1),
                    ('=', _) => (Tok::Rel(Rel::Eq), 1),
                    ('≤', _) => (Tok::Rel(Rel::Le), 1),
                    ('≥', _) => (Tok::Rel(Rel::Ge), 1),
                    ('≠', _) => (Tok::Rel(Rel::Ne), 1),
                    ('.', _) => (Tok::Dot, 1),
                    ('(', _) => (Tok::LParen, 1),
                    (')', _) => (Tok::RParen, 1),
                    ('+', _) => (Tok::Plus, 1),
                    ('-', _) => (Tok::Minus, 1),
                    ('*', _) => (Tok::Star, 1),
                    ('^', _) => (Tok::Caret, 1),
                    ('~' | '¬', _) => (Tok::Tilde, 1),
                    ('∧', _) => (Tok::And, 1),
                    ('∨', _) => (Tok::Or, 1),
                    ('→', _) => (Tok::Arrow, 1),
                    ('∈', _) => (Tok::In, 1),
                    ('∉', _) => (Tok::NotIn, 1),
                    ('ℚ', _) => (Tok::SetQ, 1),
                    ('ℤ', _) => (Tok::SetZ, 1),
                    ('∃', _) => (Tok::Exists, 1),
                    ('∀', _) => (Tok::Forall, 1),
                    _ => {
                        return Err(err(l0, c0, ParseErrorKind::Syntax(format!("unexpected character `{c}`"))))
                    }
                };
                adv = n;
                Some(t)
            }
        };
        if let Some(tok) = tok {
            out.push(Spanned { tok, line: l0, col: c0 });
        }
        i += adv;
        col += adv;
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Letters start identifiers, except the set symbols.
fn is_word_start(c: char) -> bool {
    (c.is_alphabetic() || c == '_') && c != 'ℚ' && c != 'ℤ'
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    var: Option<String>,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[pos];
        ParseError { line: s.line, col: s.col, kind }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let msg = format!("expected {wanted}, found {}", self.peek());
        self.error_at(self.pos, ParseErrorKind::Syntax(msg))
    }

    fn expect(&mut self, t: &Tok) -> PResult<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.unexpected(&t.to_string()))
        }
    }

    /// Records a use of variable `name`, rejecting a second distinct name.
    fn use_var(&mut self, name: String, pos: usize) -> PResult<()> {
        match &self.var {
            None => {
                self.var = Some(name);
                Ok(())
            }
            Some(v) if *v == name => Ok(()),
            Some(v) => Err(self.error_at(
                pos,
                ParseErrorKind::MultipleVariables { first: v.clone(), second: name },
            )),
        }
    }

    fn nat(&mut self) -> PResult<u32> {
        let pos = self.pos;
        match self.bump() {
            Tok::Int(n) => u32::try_from(&n)
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| {
                    self.error_at(pos, ParseErrorKind::Syntax(format!("exponent {n} exceeds {MAX_EXPONENT}")))
                }),
            _ => {
                self.pos = pos;
                Err(self.unexpected("a natural-number exponent"))
            }
        }
    }

    fn quant_head(&mut self) -> PResult<Option<Quant>> {
        let q = match self.peek() {
            Tok::Exists => Quant::Exists,
            Tok::Forall => Quant::Forall,
            _ => return Ok(None),
        };
        self.bump();
        let pos = self.pos;
        match self.bump() {
            Tok::Ident(name) => self.use_var(name, pos)?,
            _ => {
                self.pos = pos;
                return Err(self.unexpected("a variable after the quantifier"));
            }
        }
        self.expect(&Tok::Dot)?;
        Ok(Some(q))
    }

    fn expr(&mut self) -> PResult<Formula> {
        let mut parts = vec![self.term()?];
        while self.eat(&Tok::Or) {
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn term(&mut self) -> PResult<Formula> {
        let mut parts = vec![self.implication()?];
        while self.eat(&Tok::And) {
            parts.push(self.implication()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.factor()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> PResult<Formula> {
        if let Some(q) = self.quant_head()? {
            return Ok(Formula::Quant(q, Box::new(self.expr()?)));
        }
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.factor()?))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::Const(true))
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Const(false))
            }
            Tok::LParen => {
                // either a parenthesised formula or a polynomial atom like (x + 1)^2 > 0
                let start = self.pos;
                let saved_var = self.var.clone();
                let grouped = self.bump_and(|p| {
                    let f = p.expr()?;
                    p.expect(&Tok::RParen)?;
                    Ok(f)
                });
                match grouped {
                    Ok(f) if !self.continues_poly() => Ok(f),
                    first => {
                        let first_end = self.pos;
                        self.pos = start;
                        self.var = saved_var;
                        match self.atom() {
                            Ok(a) => Ok(a),
                            Err(e) => match first {
                                Err(e1) if first_end > self.pos => Err(e1),
                                _ => Err(e),
                            },
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn bump_and<T>(&mut self, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.bump();
        f(self)
    }

    /// Whether the next token could only continue a polynomial or relation.
    fn continues_poly(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Rel(_) | Tok::Plus | Tok::Minus | Tok::Star | Tok::Caret | Tok::Int(_) | Tok::Ident(_) | Tok::LParen
        )
    }

    fn atom(&mut self) -> PResult<Formula> {
        if let Some(m) = self.member_atom()? {
            return Ok(Formula::Member(m));
        }
        let lhs = self.poly()?;
        let rel = match self.peek() {
            Tok::Rel(r) => *r,
            _ => return Err(self.unexpected("a relation")),
        };
        self.bump();
        let rhs = self.poly()?;
        Ok(Formula::real(lhs, rel, rhs))
    }

    /// `IDENT ["^" NAT] (in | notin) (Q | Z)`, or `None` with no input
    /// consumed when the tokens do not start one.
    fn member_atom(&mut self) -> PResult<Option<MemberAtom>> {
        let start = self.pos;
        let Tok::Ident(name) = self.peek().clone() else { return Ok(None) };
        self.bump();
        let mut power = 1;
        if self.eat(&Tok::Caret) {
            match self.peek() {
                Tok::Int(_) => power = self.nat()?,
                _ => {
                    self.pos = start;
                    return Ok(None);
                }
            }
        }
        let positive = match self.peek() {
            Tok::In => true,
            Tok::NotIn => false,
            _ => {
                self.pos = start;
                return Ok(None);
            }
        };
        self.bump();
        let set = match self.bump() {
            Tok::SetQ => NumSet::Q,
            Tok::SetZ => NumSet::Z,
            _ => {
                self.pos -= 1;
                return Err(self.unexpected("`Q` or `Z`"));
            }
        };
        if power == 0 {
            return Err(self.error_at(start, ParseErrorKind::Syntax("membership power must be at least 1".into())));
        }
        self.use_var(name, start)?;
        Ok(Some(MemberAtom::new(power, set, positive)))
    }

    fn poly(&mut self) -> PResult<Poly> {
        let mut acc = self.poly_term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc + self.poly_term()?;
            } else if self.eat(&Tok::Minus) {
                acc = acc - self.poly_term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_term(&mut self) -> PResult<Poly> {
        let mut acc = self.poly_unary()?;
        loop {
            if self.eat(&Tok::Star) {
                acc = acc * self.poly_unary()?;
            } else if matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::Int(_)) {
                // implicit multiplication
                acc = acc * self.poly_power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn poly_unary(&mut self) -> PResult<Poly> {
        if self.eat(&Tok::Minus) {
            return Ok(-self.poly_unary()?);
        }
        self.poly_power()
    }

    fn poly_power(&mut self) -> PResult<Poly> {
        let base = self.poly_atom()?;
        if self.eat(&Tok::Caret) {
            let e = self.nat()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn poly_atom(&mut self) -> PResult<Poly> {
        let pos = self.pos;
        match self.bump() {
            Tok::Int(n) => Ok(if n.is_zero() { Poly::zero() } else { Poly::constant(n) }),
            Tok::Ident(name) => {
                self.use_var(name, pos)?;
                Ok(Poly::x())
            }
            Tok::LParen => {
                let p = self.poly()?;
                self.expect(&Tok::RParen)?;
                Ok(p)
            }
            _ => {
                self.pos = pos;
                Err(self.unexpected("a polynomial"))
            }
        }
    }
}

/// Parses a formula. The variable defaults to `x` when none occurs.
pub fn parse(src: &str) -> Result<QzFormula, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, var: None };
    let body = match p.quant_head()? {
        Some(q) => Formula::Quant(q, Box::new(p.expr()?)),
        None => p.expr()?,
    };
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(QzFormula::new(p.var.unwrap_or_else(|| "x".into()), body))
}
