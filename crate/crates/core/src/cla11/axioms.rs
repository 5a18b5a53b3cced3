//! Recognizers for the axioms: Peano 1–7, Successor, Log, Bit and the
//! supplementary sentences of a theory.

use std::fmt;
use std::sync::OnceLock;

use crate::syntax::defs::alpha_eq;
use crate::syntax::{parse_formula, Formula, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomKind {
    /// Peano axioms 1 through 6.
    Peano(u8),
    /// An instance of the induction scheme, with its formula `p` and variable.
    PeanoInduction { formula: Formula, var: String },
    Successor,
    Log,
    Bit,
    Supplementary(String),
}

impl AxiomKind {
    pub fn name(&self) -> String {
        match self {
            AxiomKind::Peano(i) => format!("Peano{i}"),
            AxiomKind::PeanoInduction { .. } => "Peano7".into(),
            AxiomKind::Successor => "Successor".into(),
            AxiomKind::Log => "Log".into(),
            AxiomKind::Bit => "Bit".into(),
            AxiomKind::Supplementary(n) => n.clone(),
        }
    }
}

impl fmt::Display for AxiomKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomKind::PeanoInduction { formula, var } => write!(f, "Peano7 on {var} with p = {formula}"),
            other => f.write_str(&other.name()),
        }
    }
}

const PEANO_SOURCES: [&str; 6] = [
    "all x . 0 != x'",
    "all x . all y . (x' = y' -> x = y)",
    "all x . x + 0 = x",
    "all x . all y . x + y' = (x + y)'",
    "all x . x * 0 = 0",
    "all x . all y . x * y' = x * y + x",
];

pub const SUCCESSOR_SOURCE: &str = "call x . cex y . y = x'";
pub const LOG_SOURCE: &str = "call x . cex y . y = |x|";
pub const BIT_SOURCE: &str = "call x . call y . (Bit(y, x) cor ~Bit(y, x))";

fn fixed() -> &'static [(AxiomKind, Formula)] {
    static CELL: OnceLock<Vec<(AxiomKind, Formula)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut out: Vec<(AxiomKind, Formula)> = PEANO_SOURCES
            .iter()
            .enumerate()
            .map(|(i, s)| (AxiomKind::Peano(i as u8 + 1), parse_formula(s).expect("fixed axiom parses")))
            .collect();
        for (k, s) in [(AxiomKind::Successor, SUCCESSOR_SOURCE), (AxiomKind::Log, LOG_SOURCE), (AxiomKind::Bit, BIT_SOURCE)] {
            out.push((k, parse_formula(s).expect("fixed axiom parses")));
        }
        out
    })
}

/// The fixed sentence of a named axiom (`Peano1`..`Peano6`, `Successor`, `Log`, `Bit`).
pub fn axiom_sentence(name: &str) -> Option<Formula> {
    fixed().iter().find(|(k, _)| k.name() == name).map(|(_, f)| f.clone())
}

/// Classifies `f`. `supplementary` lists the theory's extra axioms by name.
pub fn recognize_axiom(f: &Formula, supplementary: &[(String, Formula)]) -> Option<AxiomKind> {
    if !f.is_sentence() {
        return None;
    }
    if let Some((k, _)) = fixed().iter().find(|(_, a)| alpha_eq(a, f)) {
        return Some(k.clone());
    }
    if let Some((p, x)) = induction_instance(f) {
        return Some(AxiomKind::PeanoInduction { formula: p, var: x });
    }
    supplementary.iter().find(|(_, a)| alpha_eq(a, f)).map(|(n, _)| AxiomKind::Supplementary(n.clone()))
}

/// Matches `∀⃗ (p(0) ∧ ∀x(p(x) → p(x')) → ∀x p(x))` for elementary `p`.
fn induction_instance(f: &Formula) -> Option<(Formula, String)> {
    let mut body = f;
    while let Formula::Forall(_, inner) = body {
        body = inner;
    }
    let Formula::Imp(hyp, concl) = body else { return None };
    let Formula::And(basis, step) = &**hyp else { return None };
    let Formula::Forall(x, step_body) = &**step else { return None };
    let Formula::Imp(px, pxs) = &**step_body else { return None };
    let Formula::Forall(x2, px2) = &**concl else { return None };
    if !px.is_elementary() {
        return None;
    }
    let at = |t: Term| px.substitute(x, &t).ok();
    let ok = alpha_eq(&at(Term::Zero)?, basis)
        && alpha_eq(&at(Term::succ(Term::var(x.clone())))?, pxs)
        && alpha_eq(&at(Term::var(x2.clone()))?, px2);
    ok.then(|| ((**px).clone(), x.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(src: &str) -> Option<AxiomKind> {
        recognize_axiom(&parse_formula(src).unwrap(), &[])
    }

    #[test]
    fn fixed_axioms_up_to_renaming() {
        assert_eq!(rec("call x . cex y . y = x'"), Some(AxiomKind::Successor));
        assert_eq!(rec("call u . cex w . w = u'"), Some(AxiomKind::Successor));
        assert_eq!(rec("all x . 0 != x'"), Some(AxiomKind::Peano(1)));
        assert_eq!(rec("all a . all b . a * b' = a * b + a"), Some(AxiomKind::Peano(6)));
        assert_eq!(rec("call x . cex y . y = |x|"), Some(AxiomKind::Log));
        assert_eq!(rec("call x . call y . (Bit(y, x) cor ~Bit(y, x))"), Some(AxiomKind::Bit));
        assert_eq!(rec("call x . cex y . y = x + x"), None);
    }

    #[test]
    fn induction_scheme() {
        let f = "all u . ((0 + u = u + 0 & all x . (x + u = u + x -> x' + u = u + x')) -> all x . x + u = u + x)";
        match rec(f) {
            Some(AxiomKind::PeanoInduction { var, .. }) => assert_eq!(var, "x"),
            other => panic!("{other:?}"),
        }
        assert_eq!(rec("(0 = 0 & all x . (x = 0 -> x' = 0)) -> all x . x = 0'"), None);
    }

    #[test]
    fn supplementary_by_name() {
        let extra = vec![("Double".to_string(), parse_formula("call x . cex y . y = x + x").unwrap())];
        let f = parse_formula("call a . cex b . b = a + a").unwrap();
        assert_eq!(recognize_axiom(&f, &extra), Some(AxiomKind::Supplementary("Double".into())));
    }
}
