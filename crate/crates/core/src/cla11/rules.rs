//! The rules LC, Induction and Comprehension, plain and reasonable.
//!
//! Premises and conclusions are compared as ⊓-closures, with the closing
//! quantifiers over the free variables in lexicographic order.

use std::fmt;

use super::bounded::bounded_violation;
use super::params::TheoryParams;
use crate::bounds::{closure_contains, BoundExpr, Boundclass};
use crate::cl12::{check_proof, CheckConfig, Cl12Proof, ProofVerdict};
use crate::syntax::defs::alpha_eq;
use crate::syntax::sugar::{self, as_bounded_blind, as_bounded_choice, as_iff, fold_atom, Atom, ExtTerm};
use crate::syntax::{Formula, QuantKind, Term};

/// Outcome of one rule application: every violated side condition, and
/// conditions accepted only conditionally.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RuleCheck {
    pub violations: Vec<String>,
    pub obligations: Vec<String>,
}

impl RuleCheck {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }

    fn require(&mut self, cond: bool, msg: impl FnOnce() -> String) {
        if !cond {
            self.violations.push(msg());
        }
    }
}

impl fmt::Display for RuleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() && self.obligations.is_empty() {
            return f.write_str("ok");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .cloned()
            .chain(self.obligations.iter().map(|o| format!("obligation: {o}")))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

pub fn closure(f: &Formula) -> Formula {
    f.close(QuantKind::Call)
}

fn strip_calls(f: &Formula) -> &Formula {
    let mut body = f;
    while let Formula::Call(_, inner) = body {
        body = inner;
    }
    body
}

fn same_closure(a: &Formula, b: &Formula) -> bool {
    alpha_eq(&closure(a), &closure(b))
}

/// LC: the attached CL12 proof must check and end in `⊓E1,...,⊓En |o- ⊓F`.
pub fn check_lc(conclusion: &Formula, premises: &[&Formula], attached: &Cl12Proof, cfg: &CheckConfig) -> RuleCheck {
    let mut out = RuleCheck::default();
    let report = check_proof(attached, cfg);
    match &report.verdict {
        ProofVerdict::Accepted => {}
        ProofVerdict::AcceptedWithObligations(o) => {
            out.obligations.extend(o.iter().map(|(n, s)| format!("attached proof line {n}: {s}")))
        }
        ProofVerdict::Rejected { line, reason } => out.fail(format!("attached proof rejected at line {line}: {reason}")),
    }
    let Some(seq) = attached.conclusion() else { return out };
    if seq.antecedent.len() != premises.len() {
        out.fail(format!("attached proof has {} antecedent formulas for {} cited lines", seq.antecedent.len(), premises.len()));
    } else {
        for (k, (a, e)) in seq.antecedent.iter().zip(premises).enumerate() {
            out.require(alpha_eq(a, &closure(e)), || format!("antecedent {k} of the attached proof is `{a}`, not `{}`", closure(e)));
        }
    }
    out.require(alpha_eq(&seq.succedent, &closure(conclusion)), || {
        format!("attached proof concludes `{}`, not `{}`", seq.succedent, closure(conclusion))
    });
    out
}

fn membership(out: &mut RuleCheck, class: &Boundclass, b: &BoundExpr, role: &str, budget: usize) {
    let m = closure_contains(class, b, budget);
    if m.definitely_not() {
        out.fail(format!("bound {b} is not in the {role} class {class}"));
    } else if !m.is_yes() {
        out.fail(format!("membership of {b} in the {role} class undecided within {budget} closure nodes"));
    }
}

/// What an accepted Induction application was about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionData {
    pub var: String,
    pub bound: BoundExpr,
    pub formula: Formula,
}

/// Reads `x ≤ b|s| → F(x)` off an Induction conclusion.
pub fn induction_shape(conclusion: &Formula) -> Option<InductionData> {
    let Formula::Imp(guard, f) = strip_calls(conclusion) else { return None };
    let Atom::Le(ExtTerm::Var(x), bound) = fold_atom(guard)? else { return None };
    Some(InductionData { var: x, bound: BoundExpr::from_length_form(&bound)?, formula: (**f).clone() })
}

/// The premises Induction needs for `data`: basis, then step.
pub fn induction_premises(data: &InductionData, reasonable: bool) -> Result<(Formula, Formula), String> {
    let x = &data.var;
    let f = &data.formula;
    let basis = f.substitute(x, &Term::Zero).map_err(|e| e.to_string())?;
    let next = f.substitute(x, &Term::succ(Term::var(x.clone()))).map_err(|e| e.to_string())?;
    let hyp = if reasonable {
        Formula::and(sugar::lt(ExtTerm::Var(x.clone()), data.bound.applied_to_lengths()), f.clone())
    } else {
        f.clone()
    };
    Ok((closure(&basis), closure(&Formula::imp(hyp, next))))
}

pub fn check_induction(
    conclusion: &Formula,
    basis: &Formula,
    step: &Formula,
    params: &TheoryParams,
    reasonable: bool,
) -> (RuleCheck, Option<InductionData>) {
    let mut out = RuleCheck::default();
    let Some(data) = induction_shape(conclusion) else {
        out.fail("conclusion is not of the form x <= b|s| -> F(x) with b applied to lengths");
        return (out, None);
    };
    let guard = sugar::le(ExtTerm::Var(data.var.clone()), data.bound.applied_to_lengths());
    let expected = closure(&Formula::imp(guard, data.formula.clone()));
    out.require(alpha_eq(&expected, &closure(conclusion)), || {
        format!("conclusion is not the closure `{expected}` (closing quantifiers out of order?)")
    });
    out.require(!data.bound.vars().contains(&data.var), || format!("induction variable {} occurs in the bound", data.var));
    if let Some(v) = bounded_violation(&data.formula, params.space(), params.budget) {
        out.fail(format!("induction formula is not space-bounded: {v}"));
    }
    membership(&mut out, params.time(), &data.bound, "time", params.budget);
    match induction_premises(&data, reasonable) {
        Ok((b, s)) => {
            out.require(same_closure(&b, basis), || format!("basis should be `{b}`"));
            out.require(same_closure(&s, step), || format!("{} step should be `{s}`", if reasonable { "reasonable" } else { "inductive" }));
        }
        Err(e) => out.fail(format!("cannot form the premises: {e}")),
    }
    (out, Some(data))
}

/// What an accepted Comprehension application was about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComprehensionData {
    pub x: String,
    pub y: String,
    pub bound: BoundExpr,
    pub formula: Formula,
}

/// Reads `⊔|x| ≤ b|s| ∀y < b|s| (Bit(y,x) ↔ p(y))` off a Comprehension conclusion.
pub fn comprehension_shape(conclusion: &Formula) -> Option<ComprehensionData> {
    let (false, x, bound, h) = as_bounded_choice(strip_calls(conclusion))? else { return None };
    let (true, y, bound2, body) = as_bounded_blind(h)? else { return None };
    if bound2 != bound {
        return None;
    }
    let (bit, p) = as_iff(body)?;
    if !alpha_eq(bit, &sugar::bit(ExtTerm::Var(y.into()), ExtTerm::Var(x.into()))) {
        return None;
    }
    Some(ComprehensionData { x: x.into(), y: y.into(), bound: BoundExpr::from_length_form(&bound)?, formula: p.clone() })
}

/// The premise Comprehension needs for `data`.
pub fn comprehension_premise(data: &ComprehensionData, reasonable: bool) -> Formula {
    let p = &data.formula;
    let decide = Formula::cor(p.clone(), Formula::not(p.clone()));
    if reasonable {
        closure(&Formula::imp(sugar::lt(ExtTerm::Var(data.y.clone()), data.bound.applied_to_lengths()), decide))
    } else {
        closure(&decide)
    }
}

pub fn check_comprehension(
    conclusion: &Formula,
    premise: &Formula,
    params: &TheoryParams,
    reasonable: bool,
) -> (RuleCheck, Option<ComprehensionData>) {
    let mut out = RuleCheck::default();
    let Some(data) = comprehension_shape(conclusion) else {
        out.fail("conclusion is not of the form cex |x| <= b|s| . all y < b|s| . (Bit(y, x) <-> p(y))");
        return (out, None);
    };
    let b = data.bound.applied_to_lengths();
    let (x, y) = (ExtTerm::Var(data.x.clone()), ExtTerm::Var(data.y.clone()));
    let body = sugar::all_below(&data.y, b.clone(), sugar::iff(sugar::bit(y, x), data.formula.clone()));
    let expected = closure(&sugar::cex_bounded(&data.x, b, body));
    out.require(alpha_eq(&expected, &closure(conclusion)), || {
        format!("conclusion is not the closure `{expected}` (closing quantifiers out of order?)")
    });
    let svars = data.bound.vars();
    out.require(data.x != data.y && !svars.contains(&data.x) && !svars.contains(&data.y), || {
        format!("variables {}, {} and the bound's variables are not pairwise distinct", data.x, data.y)
    });
    out.require(data.formula.is_elementary(), || format!("comprehension formula `{}` is not elementary", data.formula));
    out.require(!data.formula.all_vars().contains(&data.x), || {
        format!("comprehension formula contains {}", data.x)
    });
    membership(&mut out, params.amplitude(), &data.bound, "amplitude", params.budget);
    let want = comprehension_premise(&data, reasonable);
    out.require(same_closure(&want, premise), || format!("premise should be `{want}`"));
    (out, Some(data))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn params() -> TheoryParams {
        TheoryParams::standard("B3", "B1^1", "B5").unwrap()
    }

    #[test]
    fn induction_plain_and_reasonable() {
        let concl = f("x <= |u| + |v| -> cex |z| <= |u| . z = u");
        let basis = f("cex |z| <= |u| . z = u");
        let step = f("(cex |z| <= |u| . z = u) -> (cex |z| <= |u| . z = u)");
        let p = TheoryParams::standard("B3", "B3", "B5").unwrap();
        let (r, data) = check_induction(&concl, &basis, &step, &p, false);
        assert!(r.ok(), "{r}");
        let data = data.unwrap();
        assert_eq!(data.bound.to_string(), "u + v");
        let weak = f("x < |u| + |v| & (cex |z| <= |u| . z = u) -> (cex |z| <= |u| . z = u)");
        assert!(check_induction(&concl, &basis, &weak, &p, true).0.ok());
        assert!(!check_induction(&concl, &basis, &weak, &p, false).0.ok());
    }

    #[test]
    fn induction_side_conditions() {
        let p = TheoryParams::standard("B3", "B1^1", "B3").unwrap();
        let concl = f("x <= |u| * |u| -> x = x");
        let r = check_induction(&concl, &f("0 = 0"), &f("x = x -> x' = x'"), &p, false).0;
        assert!(r.violations.iter().any(|v| v.contains("time class")), "{r}");
        let unbounded = f("x <= |u| -> cex z . z = x");
        let r = check_induction(&unbounded, &f("cex z . z = 0"), &f("(cex z . z = x) -> cex z . z = x'"), &params(), false).0;
        assert!(r.violations.iter().any(|v| v.contains("space-bounded")), "{r}");
    }

    #[test]
    fn comprehension_forms() {
        let concl = f("cex |x| <= |s| . all y < |s| . (Bit(y, x) <-> y = y)");
        assert!(check_comprehension(&concl, &f("y = y cor ~y = y"), &params(), false).0.ok());
        assert!(check_comprehension(&concl, &f("y < |s| -> (y = y cor ~y = y)"), &params(), true).0.ok());
        let with_x = f("cex |x| <= |s| . all y < |s| . (Bit(y, x) <-> y = x)");
        let r = check_comprehension(&with_x, &f("y = x cor ~y = x"), &params(), false).0;
        assert!(r.violations.iter().any(|v| v.contains("contains x")), "{r}");
    }
}
