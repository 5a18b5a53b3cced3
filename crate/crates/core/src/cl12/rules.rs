//! The rules Wait, ⊓-Choose, ⊔-Choose and Replicate, and whole-proof checking.

use std::fmt;

use super::proof::{Cl12Proof, Instance, Rule, Side, Target};
use super::sequent::Sequent;
use super::stability::{stability, Stability, StabilityBudget};
use crate::syntax::game::{apply_path, locate, occurrences};
use crate::syntax::{Action, Formula, MovePath, Player};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckConfig {
    pub stability: StabilityBudget,
    /// Unknown stability becomes a listed obligation instead of a rejection.
    pub permissive: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { stability: StabilityBudget::default(), permissive: false }
    }
}

pub fn formula_at(s: &Sequent, side: Side) -> Option<&Formula> {
    match side {
        Side::Succedent => Some(&s.succedent),
        Side::Antecedent(i) => s.antecedent.get(i),
    }
}

fn with_formula(s: &Sequent, side: Side, f: Formula) -> Sequent {
    let mut out = s.clone();
    match side {
        Side::Succedent => out.succedent = f,
        Side::Antecedent(i) => out.antecedent[i] = f,
    }
    out
}

/// Resolves the occurrence at `target` on behalf of `mover`.
pub fn resolve(s: &Sequent, target: &Target, action: Action, mover: Player) -> Result<Sequent, String> {
    let f = formula_at(s, target.side).ok_or_else(|| format!("no formula {target}"))?;
    let who = match target.side {
        Side::Succedent => mover,
        Side::Antecedent(_) => mover.opponent(),
    };
    let g = apply_path(f, who, &MovePath::new(target.path.clone(), action))
        .map_err(|e| format!("{target}: {e}"))?;
    Ok(with_formula(s, target.side, g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChooseKind {
    Meet,
    Join,
}

pub fn check_choose(
    conclusion: &Sequent,
    premise: &Sequent,
    kind: ChooseKind,
    target: &Target,
    instance: &Instance,
) -> Result<(), String> {
    let f = formula_at(conclusion, target.side).ok_or_else(|| format!("no formula {target}"))?;
    let node = locate(f, &target.path).ok_or_else(|| format!("{target} does not address a subformula"))?;
    let (binary, right_kind) = match node {
        Formula::Cand(..) => (true, kind == ChooseKind::Meet),
        Formula::Call(..) => (false, kind == ChooseKind::Meet),
        Formula::Cor(..) => (true, kind == ChooseKind::Join),
        Formula::Cex(..) => (false, kind == ChooseKind::Join),
        _ => return Err(format!("{target} is not a choice occurrence")),
    };
    if !right_kind {
        return Err(format!("{target} is a choice of the other kind"));
    }
    let action = match (binary, instance) {
        (true, Instance::Index(i)) => Action::Choose(*i),
        (true, _) => return Err("a binary choice takes the instance 0 or 1".into()),
        (false, Instance::Index(i)) => Action::Const((*i).into()),
        (false, Instance::Const(c)) => Action::Const(c.clone()),
        (false, Instance::Var(y)) => {
            if conclusion.bound_vars().contains(y) || premise.bound_vars().contains(y) {
                return Err(format!("instance {y} is a bound variable"));
            }
            Action::Var(y.clone())
        }
    };
    let expected = resolve(conclusion, target, action, Player::Top)?;
    if &expected != premise {
        return Err(format!("premise should be `{expected}`"));
    }
    Ok(())
}

pub fn check_replicate(conclusion: &Sequent, premise: &Sequent, index: usize) -> Result<(), String> {
    let f = conclusion
        .antecedent
        .get(index)
        .ok_or_else(|| format!("no antecedent formula at index {index}"))?;
    let mut expected = conclusion.clone();
    expected.antecedent.insert(index + 1, f.clone());
    if &expected != premise {
        return Err(format!("premise should be `{expected}`"));
    }
    Ok(())
}

/// How one premise of a Wait answers one environment move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WaitBranch {
    pub target: Target,
    pub action: Action,
    /// Position of the premise in the list handed to [`wait_plan`].
    pub premise: usize,
}

/// Environment-owned surface occurrences of a sequent.
pub fn environment_occurrences(s: &Sequent) -> Vec<(Target, bool)> {
    let mut out = Vec::new();
    let sides = (0..s.antecedent.len()).map(Side::Antecedent).chain(std::iter::once(Side::Succedent));
    for side in sides {
        let f = formula_at(s, side).expect("side in range");
        for occ in occurrences(f) {
            let mover = match side {
                Side::Succedent => occ.mover,
                Side::Antecedent(_) => occ.mover.opponent(),
            };
            if mover == Player::Bottom {
                let binary = matches!(occ.formula, Formula::Cand(..) | Formula::Cor(..));
                out.push((Target { side, path: occ.components }, binary));
            }
        }
    }
    out
}

/// Matches the premises of a Wait against the environment's possible moves.
pub fn wait_plan(conclusion: &Sequent, premises: &[&Sequent]) -> Result<Vec<WaitBranch>, String> {
    let mut used = vec![false; premises.len()];
    let mut plan = Vec::new();
    let taken = conclusion.all_vars();
    for (target, binary) in environment_occurrences(conclusion) {
        if binary {
            for i in 0..2u8 {
                let expected = resolve(conclusion, &target, Action::Choose(i), Player::Bottom)?;
                let k = (0..premises.len())
                    .find(|&k| !used[k] && *premises[k] == expected)
                    .ok_or_else(|| format!("missing premise for component {i} of {target}"))?;
                used[k] = true;
                plan.push(WaitBranch { target: target.clone(), action: Action::Choose(i), premise: k });
            }
            continue;
        }
        let mut found = None;
        let mut stale = None;
        'search: for (k, p) in premises.iter().enumerate() {
            if used[k] {
                continue;
            }
            for v in p.all_vars() {
                let action = Action::Var(v.clone());
                if resolve(conclusion, &target, action.clone(), Player::Bottom).as_ref() == Ok(*p) {
                    if taken.contains(&v) {
                        stale = Some(v);
                        continue;
                    }
                    found = Some((k, action));
                    break 'search;
                }
            }
        }
        match (found, stale) {
            (Some((k, action)), _) => {
                used[k] = true;
                plan.push(WaitBranch { target, action, premise: k });
            }
            (None, Some(v)) => return Err(format!("variable {v} chosen for {target} is not fresh")),
            (None, None) => return Err(format!("missing premise instantiating {target} at a fresh variable")),
        }
    }
    if let Some(k) = used.iter().position(|u| !u) {
        return Err(format!("premise {} matches no environment move", k + 1));
    }
    Ok(plan)
}

/// `Ok(None)` when fully verified, `Ok(Some(obligation))` when stability is unproved.
pub fn check_wait(conclusion: &Sequent, premises: &[&Sequent], cfg: &CheckConfig) -> Result<Option<String>, String> {
    wait_plan(conclusion, premises)?;
    match stability(conclusion, &cfg.stability) {
        Stability::Valid => Ok(None),
        Stability::Invalid(r) => Err(format!("not stable: {r}")),
        Stability::Unknown(r) => Ok(Some(format!("stability of `{conclusion}` unproved ({r})"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineStatus {
    Ok,
    Obligation(String),
    Rejected(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofVerdict {
    Accepted,
    AcceptedWithObligations(Vec<(usize, String)>),
    Rejected { line: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofReport {
    pub lines: Vec<(usize, LineStatus)>,
    pub verdict: ProofVerdict,
    pub proves: Option<Sequent>,
}

impl ProofReport {
    pub fn accepted(&self) -> bool {
        !matches!(self.verdict, ProofVerdict::Rejected { .. })
    }

    pub fn obligations(&self) -> Vec<(usize, String)> {
        match &self.verdict {
            ProofVerdict::AcceptedWithObligations(o) => o.clone(),
            _ => Vec::new(),
        }
    }

    pub fn rejected_line(&self) -> Option<usize> {
        match &self.verdict {
            ProofVerdict::Rejected { line, .. } => Some(*line),
            _ => None,
        }
    }
}

impl fmt::Display for ProofReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, st) in &self.lines {
            match st {
                LineStatus::Ok => writeln!(f, "line {n}: ok")?,
                LineStatus::Obligation(o) => writeln!(f, "line {n}: obligation: {o}")?,
                LineStatus::Rejected(r) => writeln!(f, "line {n}: rejected: {r}")?,
            }
        }
        match &self.verdict {
            ProofVerdict::Accepted => writeln!(f, "verdict: accepted")?,
            ProofVerdict::AcceptedWithObligations(o) => {
                writeln!(f, "verdict: accepted-with-obligations ({})", o.len())?
            }
            ProofVerdict::Rejected { line, reason } => writeln!(f, "verdict: rejected at line {line}: {reason}")?,
        }
        if let Some(s) = &self.proves {
            writeln!(f, "proves: {s}")?;
        }
        Ok(())
    }
}

fn check_line(proof: &Cl12Proof, idx: usize, cfg: &CheckConfig) -> LineStatus {
    let line = &proof.lines[idx];
    let mut premises = Vec::new();
    for n in line.rule.premises() {
        match proof.position_of(n) {
            Some(k) if k < idx => premises.push(&proof.lines[k].sequent),
            Some(_) => return LineStatus::Rejected(format!("premise {n} does not precede line {}", line.number)),
            None => return LineStatus::Rejected(format!("no line {n}")),
        }
    }
    let c = &line.sequent;
    let result = match &line.rule {
        Rule::Wait(_) => match check_wait(c, &premises, cfg) {
            Ok(None) => Ok(()),
            Ok(Some(o)) if cfg.permissive => return LineStatus::Obligation(o),
            Ok(Some(o)) => Err(o),
            Err(e) => Err(e),
        },
        Rule::MeetChoose { target, instance, .. } => {
            check_choose(c, premises[0], ChooseKind::Meet, target, instance)
        }
        Rule::JoinChoose { target, instance, .. } => {
            check_choose(c, premises[0], ChooseKind::Join, target, instance)
        }
        Rule::Replicate { index, .. } => check_replicate(c, premises[0], *index),
    };
    match result {
        Ok(()) => LineStatus::Ok,
        Err(e) => LineStatus::Rejected(e),
    }
}

pub fn check_proof(proof: &Cl12Proof, cfg: &CheckConfig) -> ProofReport {
    if proof.lines.is_empty() {
        return ProofReport {
            lines: Vec::new(),
            verdict: ProofVerdict::Rejected { line: 0, reason: "empty proof".into() },
            proves: None,
        };
    }
    let mut lines = Vec::new();
    let mut first_reject = None;
    let mut obligations = Vec::new();
    for (idx, line) in proof.lines.iter().enumerate() {
        let status = if proof.lines[..idx].iter().any(|l| l.number == line.number) {
            LineStatus::Rejected(format!("duplicate line number {}", line.number))
        } else {
            check_line(proof, idx, cfg)
        };
        match &status {
            LineStatus::Rejected(r) if first_reject.is_none() => first_reject = Some((line.number, r.clone())),
            LineStatus::Obligation(o) => obligations.push((line.number, o.clone())),
            _ => {}
        }
        lines.push((line.number, status));
    }
    let verdict = match first_reject {
        Some((line, reason)) => ProofVerdict::Rejected { line, reason },
        None if obligations.is_empty() => ProofVerdict::Accepted,
        None => ProofVerdict::AcceptedWithObligations(obligations),
    };
    let proves = match verdict {
        ProofVerdict::Rejected { .. } => None,
        _ => proof.conclusion().cloned(),
    };
    ProofReport { lines, verdict, proves }
}
