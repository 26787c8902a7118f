//! Proof rendering as plain text, a standalone LaTeX document, or JSON.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::algebraic::{AlgReal, RrtReport};
use crate::arith::fmt_rat;
use crate::membership::{MemberAtom, MembershipSystem, NumSet};
use crate::poly::Poly;
use crate::rcell::{RCell, RealFormula, Rel};
use crate::trace::{ProofTrace, Step};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown proof format `{s}`")),
        }
    }
}

pub fn render_proof(t: &ProofTrace, format: Format) -> String {
    match format {
        Format::Text => render_text(t),
        Format::Latex => render_latex(t),
        Format::Json => serde_json::to_string_pretty(&t.to_json()).expect("json"),
    }
}

fn rat_set(cs: &[crate::arith::BigRat]) -> String {
    let items: Vec<String> = cs.iter().map(fmt_rat).collect();
    format!("{{{}}}", items.join(", "))
}

fn power_name(n: u32) -> String {
    if n == 1 { "alpha".into() } else { format!("alpha^{n}") }
}

fn ordinal(n: u32) -> String {
    let suffix = match (n % 10, n % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{n}{suffix}")
}

fn render_text(t: &ProofTrace) -> String {
    let mut o = String::new();
    let mut indent = 0usize;
    let mut last_power = 1;
    macro_rules! line {
        ($($arg:tt)*) => {{
            let _ = writeln!(o, "{:w$}{}", "", format!($($arg)*), w = indent * 2);
        }};
    }
    for s in t.steps() {
        match s {
            Step::SubSentence { index, formula } => {
                line!("Sub-sentence {}: {formula}", index + 1);
                indent += 1;
            }
            Step::SubResult { index, truth } => {
                indent = indent.saturating_sub(1);
                line!("Sub-sentence {} is {truth}.", index + 1);
            }
            Step::Duality { negated } => {
                line!("Universal claim: it holds iff {negated} is false.");
            }
            Step::Problem { index, total, phi, gamma } => {
                line!("Disjunct {} of {total}: phi = {phi}; Gamma = {gamma}", index + 1);
            }
            Step::Saturation { after, contradictory, .. } => {
                line!("Closure of Gamma under saturation: {after}");
                if *contradictory {
                    line!("The closure contains a constraint and its negation, so it is inconsistent.");
                }
            }
            Step::DegreeSolve { constraints, least } => match least {
                Some(d) => line!("Degree constraints [{constraints}]: least solution d = {d}."),
                None => line!("Degree constraints [{constraints}]: no solution."),
            },
            Step::Decomposition { cells } => {
                line!("Cell decomposition ({} cells):", cells.len());
                for (i, c) in cells.iter().enumerate() {
                    line!("  {}. {c}", i + 1);
                }
            }
            Step::CellFilter { satisfying } => {
                line!("Cells on which phi holds ({}):", satisfying.len());
                for c in satisfying {
                    line!("  {c}");
                }
            }
            Step::CellCheck { cell } => {
                line!("Checking cell {cell}:");
                indent += 1;
            }
            Step::Evaluate { atom, alpha } => {
                line!("Evaluate ({}) at alpha = {alpha}.", atom.display_in("alpha"));
                last_power = atom.power;
            }
            Step::Power { n, result, .. } => {
                line!("  alpha^{n} = {result}");
            }
            Step::RrtCheck { report, .. } => {
                let name = power_name(last_power);
                if report.candidates.len() == 1 && report.poly.degree() == Some(1) {
                    line!("  {name} = {} is rational.", fmt_rat(&report.candidates[0]));
                    continue;
                }
                line!(
                    "  Rational candidates for a root of {} in [{}, {}]: {}",
                    report.poly,
                    fmt_rat(&report.lo),
                    fmt_rat(&report.hi),
                    rat_set(&report.candidates)
                );
                match &report.root {
                    Some(q) => line!("  {name} = {} is rational.", fmt_rat(q)),
                    None => line!("  No candidate is a root, so {name} is irrational."),
                }
            }
            Step::IntegerRange { d, lo, hi, count } => {
                line!("A witness here is the {} root of an integer z with L^{d} < z < U^{d}.", ordinal(*d));
                if count.sign() == num_bigint::Sign::NoSign {
                    line!("There is no such integer.");
                } else {
                    line!("Integers z with {lo} <= z <= {hi}: {count} candidates.");
                }
            }
            Step::IntegerScan { d, examined, found } => match found {
                Some(z) => line!("Scanned {examined} candidates for d = {d}; z = {z} passes."),
                None => line!("Scanned {examined} candidates for d = {d}; none passes."),
            },
            Step::WitnessFound { witness } => {
                line!("Witness found: {witness} (approx. {})", witness.approx(10));
            }
            Step::CellRefuted { reason, .. } => {
                line!("Refuted: {reason}.");
                indent = indent.saturating_sub(1);
            }
            Step::Conclusion { truth } => {
                indent = 0;
                line!("Conclusion: the formula is {truth}.");
            }
        }
    }
    o
}

fn tex_poly(p: &Poly) -> String {
    let s = p.to_string();
    // exponents with more than one digit need braces
    let mut out = String::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c == '^' {
            let mut e = String::new();
            while let Some(d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                e.push(*d);
                chars.next();
            }
            let _ = write!(out, "^{{{e}}}");
        } else {
            out.push(c);
        }
    }
    out
}

fn tex_rat(q: &crate::arith::BigRat) -> String {
    if q.is_integer() {
        q.to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn tex_alg(a: &AlgReal) -> String {
    match a {
        AlgReal::Rat(q) => tex_rat(q),
        AlgReal::Root(r) => format!(
            "\\mathrm{{Root}}({}, [{}, {}])",
            tex_poly(r.carrier()),
            tex_rat(r.lo()),
            tex_rat(r.hi())
        ),
    }
}

fn tex_cell(c: &RCell) -> String {
    match c {
        RCell::Point(a) => format!("[{}]", tex_alg(a)),
        RCell::Open { lower, upper } => format!(
            "({}, {})",
            lower.as_ref().map_or("-\\infty".into(), tex_alg),
            upper.as_ref().map_or("+\\infty".into(), tex_alg)
        ),
    }
}

fn tex_rel(r: Rel) -> &'static str {
    match r {
        Rel::Lt => "<",
        Rel::Le => "\\leq",
        Rel::Eq => "=",
        Rel::Ge => "\\geq",
        Rel::Gt => ">",
        Rel::Ne => "\\neq",
    }
}

fn tex_member(a: &MemberAtom, base: &str) -> String {
    let lhs = if a.power == 1 { base.to_string() } else { format!("{base}^{{{}}}", a.power) };
    let op = if a.positive { "\\in" } else { "\\notin" };
    let set = match a.set {
        NumSet::Q => "\\mathbf{Q}",
        NumSet::Z => "\\mathbf{Z}",
    };
    format!("{lhs} {op} {set}")
}

fn tex_gamma(g: &MembershipSystem) -> String {
    if g.is_empty() {
        return "\\mathrm{true}".into();
    }
    let parts: Vec<String> = g.atoms().iter().map(|a| format!("({})", tex_member(a, "x"))).collect();
    parts.join(" \\wedge ")
}

fn tex_phi(phi: &RealFormula) -> String {
    match phi {
        RealFormula::Const(b) => format!("\\mathrm{{{b}}}"),
        RealFormula::Atom(a) => format!("{} {} 0", tex_poly(&a.poly), tex_rel(a.rel)),
        RealFormula::And(fs) | RealFormula::Or(fs) => {
            let op = if matches!(phi, RealFormula::And(_)) { " \\wedge " } else { " \\vee " };
            let parts: Vec<String> = fs.iter().map(|f| format!("({})", tex_phi(f))).collect();
            parts.join(op)
        }
    }
}

fn tex_text(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\textbackslash{}"),
            '{' | '}' | '$' | '&' | '#' | '%' | '_' => {
                out.push('\\');
                out.push(c);
            }
            '^' => out.push_str("\\^{}"),
            '~' => out.push_str("\\~{}"),
            _ => out.push(c),
        }
    }
    out
}

fn tex_rrt(o: &mut String, report: &RrtReport, name: &str) {
    if report.candidates.len() == 1 && report.poly.degree() == Some(1) {
        let _ = writeln!(o, "  ${name} = {}$ is rational.", tex_rat(&report.candidates[0]));
        return;
    }
    let cands: Vec<String> = report.candidates.iter().map(tex_rat).collect();
    let _ = writeln!(
        o,
        "  Rational candidates for a root of ${}$ in $[{}, {}]$: $\\{{{}\\}}$.",
        tex_poly(&report.poly),
        tex_rat(&report.lo),
        tex_rat(&report.hi),
        cands.join(", ")
    );
    match &report.root {
        Some(q) => {
            let _ = writeln!(o, "  Hence ${name} = {}$ is rational.", tex_rat(q));
        }
        None => {
            let _ = writeln!(o, "  No candidate is a root, so ${name}$ is irrational.");
        }
    }
}

fn render_latex(t: &ProofTrace) -> String {
    let mut o = String::new();
    o.push_str("\\documentclass{article}\n\\begin{document}\n\\section*{Proof}\n");
    let mut open_items = 0usize;
    let mut last_power = 1;
    for s in t.steps() {
        let block = matches!(
            s,
            Step::Problem { .. } | Step::SubSentence { .. } | Step::SubResult { .. } | Step::Conclusion { .. }
        );
        if block && open_items > 0 {
            o.push_str("\\end{enumerate}\n");
            open_items = 0;
        }
        match s {
            Step::SubSentence { index, formula } => {
                let _ = writeln!(o, "\\subsection*{{Sub-sentence {}}}\n\\texttt{{{}}}\n", index + 1, tex_text(formula));
            }
            Step::SubResult { index, truth } => {
                let _ = writeln!(o, "\\noindent Sub-sentence {} is {truth}.\n", index + 1);
            }
            Step::Duality { negated } => {
                let _ = writeln!(o, "The universal claim holds iff \\texttt{{{}}} is false.\n", tex_text(negated));
            }
            Step::Problem { index, total, phi, gamma } => {
                let _ = writeln!(
                    o,
                    "\\subsection*{{Disjunct {} of {total}}}\n$\\varphi = {}$ and $\\Gamma = {}$.\n",
                    index + 1,
                    tex_phi(phi),
                    tex_gamma(gamma)
                );
            }
            Step::Saturation { after, contradictory, .. } => {
                let _ = writeln!(o, "Closure under saturation: $\\overline{{\\Gamma}} = {}$.", tex_gamma(after));
                if *contradictory {
                    o.push_str("It contains a constraint and its negation, so it is inconsistent.\n");
                }
                o.push('\n');
            }
            Step::DegreeSolve { constraints, least } => {
                let _ = match least {
                    Some(d) => writeln!(o, "Degree constraints $[{}]$: least solution $d = {d}$.\n", tex_text(&constraints.to_string()).replace("!|", "\\not\\mid")),
                    None => writeln!(o, "Degree constraints $[{}]$: no solution.\n", tex_text(&constraints.to_string()).replace("!|", "\\not\\mid")),
                };
            }
            Step::Decomposition { cells } => {
                let _ = writeln!(o, "Cell decomposition ({} cells):\n\\begin{{enumerate}}", cells.len());
                for c in cells {
                    let _ = writeln!(o, "  \\item ${}$", tex_cell(c));
                }
                o.push_str("\\end{enumerate}\n");
            }
            Step::CellFilter { satisfying } => {
                let _ = writeln!(o, "Cells on which $\\varphi$ holds ({}):\n\\begin{{itemize}}", satisfying.len());
                for c in satisfying {
                    let _ = writeln!(o, "  \\item ${}$", tex_cell(c));
                }
                o.push_str("\\end{itemize}\n");
            }
            Step::CellCheck { cell } => {
                if open_items == 0 {
                    o.push_str("\\begin{enumerate}\n");
                }
                open_items += 1;
                let _ = writeln!(o, "\\item Checking ${}$.\n", tex_cell(cell));
            }
            Step::Evaluate { atom, alpha } => {
                last_power = atom.power;
                let _ = writeln!(o, "  Evaluate $({})$ for $\\alpha = {}$.", tex_member(atom, "\\alpha"), tex_alg(alpha));
            }
            Step::Power { n, result, .. } => {
                let _ = writeln!(o, "  $\\alpha^{{{n}}} = {}$.", tex_alg(result));
            }
            Step::RrtCheck { report, .. } => {
                let name = if last_power == 1 { "\\alpha".to_string() } else { format!("\\alpha^{{{last_power}}}") };
                tex_rrt(&mut o, report, &name);
            }
            Step::IntegerRange { d, lo, hi, count } => {
                let _ = writeln!(o, "  A witness here is $\\sqrt[{d}]{{z}}$ for an integer $z$ with $L^{{{d}}} < z < U^{{{d}}}$.");
                if count.sign() == num_bigint::Sign::NoSign {
                    o.push_str("  There is no such integer.\n");
                } else {
                    let _ = writeln!(o, "  The integers $z$ with ${lo} \\leq z \\leq {hi}$ number {count}.");
                }
            }
            Step::IntegerScan { d, examined, found } => {
                let _ = match found {
                    Some(z) => writeln!(o, "  Scanned {examined} candidates for $d = {d}$; $z = {z}$ passes."),
                    None => writeln!(o, "  Scanned {examined} candidates for $d = {d}$; none passes."),
                };
            }
            Step::WitnessFound { witness } => {
                let _ = writeln!(o, "  Witness found: ${}$ ($\\approx {}$).\n", tex_alg(witness), witness.approx(10));
            }
            Step::CellRefuted { reason, .. } => {
                let _ = writeln!(o, "  Refuted: {}.\n", tex_text(reason));
            }
            Step::Conclusion { truth } => {
                let _ = writeln!(o, "\\paragraph{{Conclusion.}} The formula is {truth}.");
            }
        }
    }
    if open_items > 0 {
        o.push_str("\\end{enumerate}\n");
    }
    o.push_str("\\end{document}\n");
    o
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::decide_str;

    /// Balanced braces and matching environments, and no macros outside
    /// what the article class provides.
    fn check_latex(doc: &str) {
        const ALLOWED: &[&str] = &[
            "documentclass", "begin", "end", "section", "subsection", "paragraph", "item",
            "noindent", "texttt", "mathrm", "mathbf", "infty", "in", "notin", "wedge", "vee",
            "leq", "geq", "neq", "not", "mid", "varphi", "Gamma", "overline", "alpha", "approx",
            "sqrt", "textbackslash",
        ];
        let mut depth = 0i32;
        let mut envs = Vec::new();
        let b = doc.as_bytes();
        let mut i = 0;
        while i < b.len() {
            match b[i] {
                b'\\' => {
                    let start = i + 1;
                    let mut j = start;
                    while j < b.len() && b[j].is_ascii_alphabetic() {
                        j += 1;
                    }
                    if j == start {
                        i += 2;
                        continue;
                    }
                    let name = &doc[start..j];
                    assert!(ALLOWED.contains(&name), "macro \\{name}");
                    if name == "begin" || name == "end" {
                        let close = doc[j..].find('}').unwrap() + j;
                        let env = &doc[j + 1..close];
                        if name == "begin" {
                            envs.push(env.to_string());
                        } else {
                            assert_eq!(envs.pop().as_deref(), Some(env), "environment nesting");
                        }
                    }
                    i = j;
                    continue;
                }
                b'{' => depth += 1,
                b'}' => depth -= 1,
                _ => {}
            }
            assert!(depth >= 0);
            i += 1;
        }
        assert_eq!(depth, 0);
        assert!(envs.is_empty(), "unclosed {envs:?}");
        assert_eq!(doc.matches('$').count() % 2, 0);
    }

    #[test]
    fn example_one_text() {
        let v = decide_str("exists x. x^2 - 2 = 0 /\\ x in Q").unwrap();
        let t = render_proof(&v.trace, Format::Text);
        assert!(t.contains("Cell decomposition (7 cells)"));
        assert!(t.contains("  7. (Root(x^2 - 2, [0, 3]), +inf)"));
        assert!(t.contains("{-1, -2}") && t.contains("{1, 2}"));
        assert!(t.ends_with("Conclusion: the formula is false.\n"));
    }

    #[test]
    fn example_three_text() {
        let v = decide_str("exists x. x^3 - 7 > 3 /\\ x^2 + x + 1 < 50 /\\ x^2 notin Q /\\ x^3 in Z").unwrap();
        let t = render_proof(&v.trace, Format::Text);
        assert!(t.contains("266 candidates"));
        assert!(t.contains("Witness found: Root(x^3 - 11, [1/12, 11])"));
    }

    #[test]
    fn empty_json() {
        assert_eq!(render_proof(&ProofTrace::new(), Format::Json), "[]");
    }

    #[test]
    fn latex_is_well_formed() {
        for src in [
            "exists x. x^2 - 2 = 0 /\\ x in Q",
            "exists x. x^3 in Z /\\ x^5 notin Z /\\ x in Q",
            "exists x. x^3 - 7 > 3 /\\ x^2 + x + 1 < 50 /\\ x^2 notin Q /\\ x^3 in Z",
            "(exists x. x >= 0 /\\ x^2 = 2) /\\ ~(exists x. x in Q /\\ x >= 0 /\\ x^2 = 2)",
            "forall x. x^2 notin Q -> x notin Q",
            "exists x. (x in Z /\\ x^2 = 2) \\/ (x^2 in Z /\\ x^4 > 100 /\\ x^4 < 120)",
        ] {
            let v = decide_str(src).unwrap();
            check_latex(&render_proof(&v.trace, Format::Latex));
        }
    }

    #[test]
    fn ordinals() {
        let got: Vec<String> = [1, 2, 3, 4, 11, 12, 13, 21, 22, 103].into_iter().map(ordinal).collect();
        assert_eq!(got, ["1st", "2nd", "3rd", "4th", "11th", "12th", "13th", "21st", "22nd", "103rd"]);
    }

    #[test]
    fn format_names() {
        assert_eq!("latex".parse::<Format>(), Ok(Format::Latex));
        assert!("pdf".parse::<Format>().is_err());
    }
}
