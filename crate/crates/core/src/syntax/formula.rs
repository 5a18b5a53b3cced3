use std::collections::BTreeSet;
use std::fmt;

use super::term::Term;
use super::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// Binary choice conjunction ⊓.
    Cand(Box<Formula>, Box<Formula>),
    /// Binary choice disjunction ⊔.
    Cor(Box<Formula>, Box<Formula>),
    /// Choice universal quantifier ⊓x.
    Call(String, Box<Formula>),
    /// Choice existential quantifier ⊔x.
    Cex(String, Box<Formula>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuantKind {
    Forall,
    Exists,
    Call,
    Cex,
}

impl Formula {
    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }
    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }
    pub fn forall(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(f))
    }
    pub fn exists(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(f))
    }
    pub fn cand(a: Formula, b: Formula) -> Formula {
        Formula::Cand(Box::new(a), Box::new(b))
    }
    pub fn cor(a: Formula, b: Formula) -> Formula {
        Formula::Cor(Box::new(a), Box::new(b))
    }
    pub fn call(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Call(x.into(), Box::new(f))
    }
    pub fn cex(x: impl Into<String>, f: Formula) -> Formula {
        Formula::Cex(x.into(), Box::new(f))
    }
    pub fn quant(kind: QuantKind, x: impl Into<String>, f: Formula) -> Formula {
        match kind {
            QuantKind::Forall => Formula::forall(x, f),
            QuantKind::Exists => Formula::exists(x, f),
            QuantKind::Call => Formula::call(x, f),
            QuantKind::Cex => Formula::cex(x, f),
        }
    }

    /// The canonical true atom `0=0`.
    pub fn truth() -> Formula {
        Formula::Eq(Term::Zero, Term::Zero)
    }

    /// The canonical false atom `0=0'`.
    pub fn falsity() -> Formula {
        Formula::Eq(Term::Zero, Term::succ(Term::Zero))
    }

    pub fn is_elementary(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(a) => a.is_elementary(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.is_elementary() && b.is_elementary()
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) => a.is_elementary(),
            Formula::Cand(..) | Formula::Cor(..) | Formula::Call(..) | Formula::Cex(..) => false,
        }
    }

    /// True when no constant other than `0` occurs anywhere.
    pub fn is_pure(&self) -> bool {
        match self {
            Formula::Eq(a, b) => a.is_pure() && b.is_pure(),
            Formula::Not(a) => a.is_pure(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Cand(a, b)
            | Formula::Cor(a, b) => a.is_pure() && b.is_pure(),
            Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Call(_, a) | Formula::Cex(_, a) => {
                a.is_pure()
            }
        }
    }

    /// A paraformula is a formula in which a binary constant other than `0` occurs.
    pub fn is_paraformula(&self) -> bool {
        !self.is_pure()
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                for v in a.vars().into_iter().chain(b.vars()) {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Cand(a, b)
            | Formula::Cor(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) | Formula::Call(x, a) | Formula::Cex(x, a) => {
                bound.push(x.clone());
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub fn has_free(&self, x: &str) -> bool {
        match self {
            Formula::Eq(a, b) => a.has_var(x) || b.has_var(x),
            Formula::Not(a) => a.has_free(x),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Cand(a, b)
            | Formula::Cor(a, b) => a.has_free(x) || b.has_free(x),
            Formula::Forall(y, a) | Formula::Exists(y, a) | Formula::Call(y, a) | Formula::Cex(y, a) => {
                y != x && a.has_free(x)
            }
        }
    }

    /// Every variable name occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_all(&mut out);
        out
    }

    pub fn collect_all(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Eq(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::Not(a) => a.collect_all(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Cand(a, b)
            | Formula::Cor(a, b) => {
                a.collect_all(out);
                b.collect_all(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) | Formula::Call(x, a) | Formula::Cex(x, a) => {
                out.insert(x.clone());
                a.collect_all(out);
            }
        }
    }

    /// Variables bound by some quantifier of the given kinds.
    pub fn bound_vars_of(&self, kinds: &[QuantKind]) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Some((k, x, _)) = f.as_quant() {
                if kinds.contains(&k) {
                    out.insert(x.to_string());
                }
            }
        });
        out
    }

    pub fn as_quant(&self) -> Option<(QuantKind, &str, &Formula)> {
        match self {
            Formula::Forall(x, a) => Some((QuantKind::Forall, x, a)),
            Formula::Exists(x, a) => Some((QuantKind::Exists, x, a)),
            Formula::Call(x, a) => Some((QuantKind::Call, x, a)),
            Formula::Cex(x, a) => Some((QuantKind::Cex, x, a)),
            _ => None,
        }
    }

    /// Pre-order traversal over all subformulas.
    pub fn walk(&self, visit: &mut dyn FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::Eq(..) => {}
            Formula::Not(a) => a.walk(visit),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Cand(a, b)
            | Formula::Cor(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Call(_, a) | Formula::Cex(_, a) => {
                a.walk(visit)
            }
        }
    }

    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `x`.
    /// Fails, naming the binder, when a variable of `t` would be captured.
    pub fn substitute(&self, x: &str, t: &Term) -> Result<Formula, SyntaxError> {
        let tv = t.vars();
        self.subst_inner(x, t, &tv)
    }

    fn subst_inner(&self, x: &str, t: &Term, tv: &BTreeSet<String>) -> Result<Formula, SyntaxError> {
        Ok(match self {
            Formula::Eq(a, b) => Formula::Eq(a.subst(x, t), b.subst(x, t)),
            Formula::Not(a) => Formula::not(a.subst_inner(x, t, tv)?),
            Formula::And(a, b) => Formula::and(a.subst_inner(x, t, tv)?, b.subst_inner(x, t, tv)?),
            Formula::Or(a, b) => Formula::or(a.subst_inner(x, t, tv)?, b.subst_inner(x, t, tv)?),
            Formula::Imp(a, b) => Formula::imp(a.subst_inner(x, t, tv)?, b.subst_inner(x, t, tv)?),
            Formula::Cand(a, b) => Formula::cand(a.subst_inner(x, t, tv)?, b.subst_inner(x, t, tv)?),
            Formula::Cor(a, b) => Formula::cor(a.subst_inner(x, t, tv)?, b.subst_inner(x, t, tv)?),
            Formula::Forall(y, a) | Formula::Exists(y, a) | Formula::Call(y, a) | Formula::Cex(y, a) => {
                let kind = self.as_quant().map(|q| q.0).unwrap_or(QuantKind::Forall);
                if y == x || !a.has_free(x) {
                    self.clone()
                } else if tv.contains(y) {
                    return Err(SyntaxError::Capture {
                        var: y.clone(),
                        binder: format!("{} {}", kind_token(kind), y),
                    });
                } else {
                    Formula::quant(kind, y.clone(), a.subst_inner(x, t, tv)?)
                }
            }
        })
    }

    /// Prefixes quantifiers of `kind` over the free variables, in
    /// lexicographic order (the first variable outermost).
    pub fn close(&self, kind: QuantKind) -> Formula {
        let mut out = self.clone();
        for v in self.free_vars().into_iter().rev() {
            out = Formula::quant(kind, v, out);
        }
        out
    }

    /// Replaces surface ⊔/⊔x occurrences with `0=0'` and surface ⊓/⊓x with `0=0`.
    pub fn elementarize(&self) -> Formula {
        match self {
            Formula::Eq(..) => self.clone(),
            Formula::Not(a) => Formula::not(a.elementarize()),
            Formula::And(a, b) => Formula::and(a.elementarize(), b.elementarize()),
            Formula::Or(a, b) => Formula::or(a.elementarize(), b.elementarize()),
            Formula::Imp(a, b) => Formula::imp(a.elementarize(), b.elementarize()),
            Formula::Forall(x, a) => Formula::forall(x.clone(), a.elementarize()),
            Formula::Exists(x, a) => Formula::exists(x.clone(), a.elementarize()),
            Formula::Cand(..) | Formula::Call(..) => Formula::truth(),
            Formula::Cor(..) | Formula::Cex(..) => Formula::falsity(),
        }
    }

    /// True when `¬` is applied only to elementary subformulas.
    pub fn negation_normal(&self) -> bool {
        match self {
            Formula::Eq(..) => true,
            Formula::Not(a) => a.is_elementary(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Imp(a, b)
            | Formula::Cand(a, b)
            | Formula::Cor(a, b) => a.negation_normal() && b.negation_normal(),
            Formula::Forall(_, a) | Formula::Exists(_, a) | Formula::Call(_, a) | Formula::Cex(_, a) => {
                a.negation_normal()
            }
        }
    }

    /// Pushes negations inward until they only cover elementary subformulas,
    /// dualizing choice operators on the way.
    pub fn normalize(&self) -> Formula {
        match self {
            Formula::Eq(..) => self.clone(),
            Formula::Not(a) => {
                if a.is_elementary() {
                    self.clone()
                } else {
                    negate(a)
                }
            }
            Formula::And(a, b) => Formula::and(a.normalize(), b.normalize()),
            Formula::Or(a, b) => Formula::or(a.normalize(), b.normalize()),
            Formula::Imp(a, b) => Formula::imp(a.normalize(), b.normalize()),
            Formula::Cand(a, b) => Formula::cand(a.normalize(), b.normalize()),
            Formula::Cor(a, b) => Formula::cor(a.normalize(), b.normalize()),
            Formula::Forall(x, a) => Formula::forall(x.clone(), a.normalize()),
            Formula::Exists(x, a) => Formula::exists(x.clone(), a.normalize()),
            Formula::Call(x, a) => Formula::call(x.clone(), a.normalize()),
            Formula::Cex(x, a) => Formula::cex(x.clone(), a.normalize()),
        }
    }

    /// The inductive notion of a critical formula; `→` is read as `¬G0 ∨ G1`.
    pub fn is_critical(&self) -> bool {
        match self {
            Formula::Cor(..) | Formula::Cex(..) => true,
            Formula::Forall(_, g) | Formula::Exists(_, g) => g.is_critical(),
            Formula::Or(a, b) => a.is_critical() && b.is_critical(),
            Formula::And(a, b) => a.is_critical() || b.is_critical(),
            Formula::Imp(a, b) => a.is_critical_negated() && b.is_critical(),
            Formula::Eq(..) | Formula::Not(_) | Formula::Cand(..) | Formula::Call(..) => false,
        }
    }

    fn is_critical_negated(&self) -> bool {
        match self {
            Formula::Cand(..) | Formula::Call(..) => true,
            Formula::Forall(_, g) | Formula::Exists(_, g) => g.is_critical_negated(),
            Formula::And(a, b) => a.is_critical_negated() && b.is_critical_negated(),
            Formula::Or(a, b) => a.is_critical_negated() || b.is_critical_negated(),
            Formula::Imp(a, b) => a.is_critical() || b.is_critical_negated(),
            Formula::Eq(..) | Formula::Not(_) | Formula::Cor(..) | Formula::Cex(..) => false,
        }
    }
}

/// Negation pushed through classical connectives with choice operators dualized.
fn negate(f: &Formula) -> Formula {
    if f.is_elementary() {
        return match f {
            Formula::Not(a) => (**a).clone(),
            _ => Formula::not(f.clone()),
        };
    }
    match f {
        Formula::Eq(..) => Formula::not(f.clone()),
        Formula::Not(a) => a.normalize(),
        Formula::And(a, b) => Formula::or(negate(a), negate(b)),
        Formula::Or(a, b) => Formula::and(negate(a), negate(b)),
        Formula::Imp(a, b) => Formula::and(a.normalize(), negate(b)),
        Formula::Cand(a, b) => Formula::cor(negate(a), negate(b)),
        Formula::Cor(a, b) => Formula::cand(negate(a), negate(b)),
        Formula::Forall(x, a) => Formula::exists(x.clone(), negate(a)),
        Formula::Exists(x, a) => Formula::forall(x.clone(), negate(a)),
        Formula::Call(x, a) => Formula::cex(x.clone(), negate(a)),
        Formula::Cex(x, a) => Formula::call(x.clone(), negate(a)),
    }
}

pub fn kind_token(kind: QuantKind) -> &'static str {
    match kind {
        QuantKind::Forall => "all",
        QuantKind::Exists => "ex",
        QuantKind::Call => "call",
        QuantKind::Cex => "cex",
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::printer::render(self))
    }
}
