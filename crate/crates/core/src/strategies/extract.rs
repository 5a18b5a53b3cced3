//! Strategies read off checked CL12 proofs.
//!
//! The agent starts at the last line and walks toward the leaves. Choose
//! lines become moves, either in the succedent (sent out as the machine's
//! move) or in an antecedent channel (played against that channel's
//! provider). Replicate clones a channel. A Wait line consumes the next
//! adversary event, from the environment in the succedent or from a
//! provider, and continues at the premise answering it.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigUint;

use super::arith::Op;
use super::providers::ProviderBundle;
use crate::arena::{Agent, AgentFault, Ctx};
use crate::cl12::{check_proof, formula_at, wait_plan, CheckConfig, Cl12Proof, Instance, ProofVerdict, Rule, Sequent, Side, Target};
use crate::syntax::defs::alpha_eq;
use crate::syntax::game::locate;
use crate::syntax::term::bit_len;
use crate::syntax::{Action, Formula, MovePath};

/// A Wait branch resolved to proof-line positions.
#[derive(Clone, Debug)]
struct Branch {
    target: Target,
    action: Action,
    line: usize,
}

#[derive(Clone)]
pub struct ExtractedAgent {
    proof: Arc<Cl12Proof>,
    plans: Arc<Vec<Vec<Branch>>>,
    line: usize,
    bundle: ProviderBundle,
    bindings: BTreeMap<String, BigUint>,
    seen_env: usize,
    label: String,
}

/// Builds the agent for the conclusion of `proof`. The proof must check,
/// with stability obligations tolerated only in permissive mode, and the
/// bundle must supply one channel per antecedent formula of the conclusion.
pub fn extract_agent(proof: &Cl12Proof, bundle: ProviderBundle, cfg: &CheckConfig) -> Result<ExtractedAgent, String> {
    let report = check_proof(proof, cfg);
    match &report.verdict {
        ProofVerdict::Accepted => {}
        ProofVerdict::AcceptedWithObligations(_) if cfg.permissive => {}
        ProofVerdict::AcceptedWithObligations(o) => {
            return Err(format!("proof has {} unproved stability obligations", o.len()))
        }
        ProofVerdict::Rejected { line, reason } => return Err(format!("proof rejected at line {line}: {reason}")),
    }
    let conclusion = proof.conclusion().expect("checked proofs are nonempty");
    if bundle.len() != conclusion.antecedent.len() {
        return Err(format!(
            "{} provider channels for {} antecedent formulas",
            bundle.len(),
            conclusion.antecedent.len()
        ));
    }
    for (k, (ch, f)) in bundle.channels.iter().zip(&conclusion.antecedent).enumerate() {
        if !alpha_eq(&ch.game, f) {
            return Err(format!("channel {k} plays `{}`, antecedent {k} is `{f}`", ch.game));
        }
    }
    let mut plans = Vec::with_capacity(proof.lines.len());
    for line in &proof.lines {
        let mut branches = Vec::new();
        if let Rule::Wait(ps) = &line.rule {
            let premises: Vec<&Sequent> = ps.iter().map(|&n| &proof.lines[position(proof, n)].sequent).collect();
            for b in wait_plan(&line.sequent, &premises)? {
                branches.push(Branch { target: b.target, action: b.action, line: position(proof, ps[b.premise]) });
            }
        }
        plans.push(branches);
    }
    Ok(ExtractedAgent {
        line: proof.lines.len() - 1,
        proof: Arc::new(proof.clone()),
        plans: Arc::new(plans),
        bundle,
        bindings: BTreeMap::new(),
        seen_env: 0,
        label: "extract".into(),
    })
}

fn position(proof: &Cl12Proof, n: usize) -> usize {
    proof.position_of(n).expect("checked proofs reference existing lines")
}

/// The canonical provider for a formula that is one of the built-in games.
pub fn canonical_provider(f: &Formula) -> Option<Box<dyn Agent>> {
    Op::ALL
        .into_iter()
        .find(|op| alpha_eq(&op.game(), f))
        .map(|op| Box::new(super::arith::OpAgent::new(op)) as Box<dyn Agent>)
}

/// Canonical providers for every antecedent formula of `s`.
pub fn canonical_bundle(s: &Sequent) -> Result<ProviderBundle, String> {
    let mut bundle = ProviderBundle::new();
    for (k, f) in s.antecedent.iter().enumerate() {
        let p = canonical_provider(f).ok_or_else(|| format!("no built-in provider for antecedent {k}: `{f}`"))?;
        bundle = bundle.with(f.clone(), p);
    }
    Ok(bundle)
}

impl ExtractedAgent {
    pub fn with_label(mut self, label: impl Into<String>) -> ExtractedAgent {
        self.label = label.into();
        self
    }

    pub fn bundle(&self) -> &ProviderBundle {
        &self.bundle
    }

    /// Number of the proof line the agent currently stands at.
    pub fn current_line(&self) -> usize {
        self.proof.lines[self.line].number
    }

    fn fault(&self, msg: impl Into<String>) -> AgentFault {
        AgentFault::new(self.name(), msg)
    }

    fn choice_move(&self, s: &Sequent, target: &Target, instance: &Instance) -> Result<String, String> {
        let f = formula_at(s, target.side).ok_or_else(|| format!("no formula {target}"))?;
        let occ = locate(f, &target.path).ok_or_else(|| format!("no occurrence at {target}"))?;
        let binary = matches!(occ, Formula::Cand(..) | Formula::Cor(..));
        let action = match (instance, binary) {
            (Instance::Index(i), true) => Action::Choose(*i),
            (Instance::Index(i), false) => Action::Const(BigUint::from(*i)),
            (Instance::Const(c), false) => Action::Const(c.clone()),
            (Instance::Var(x), false) => Action::Const(self.bindings.get(x).cloned().unwrap_or_default()),
            (_, true) => return Err(format!("{target} is a binary choice; instance {instance} is not 0 or 1")),
        };
        Ok(MovePath::new(target.path.clone(), action).render())
    }

    /// Continues at the premise selected by an adversary move on `side`.
    fn follow(&mut self, side: Side, mv: &str) -> Result<(), String> {
        let path = MovePath::parse(mv).map_err(|e| e.to_string())?;
        for b in &self.plans[self.line] {
            if b.target.side != side || b.target.path != path.components {
                continue;
            }
            match (&b.action, &path.action) {
                (Action::Choose(i), Action::Choose(j)) if i == j => {}
                (Action::Var(v), Action::Const(c)) => {
                    self.bindings.insert(v.clone(), c.clone());
                }
                _ => continue,
            }
            self.line = b.line;
            return Ok(());
        }
        let whose = match side {
            Side::Succedent => "environment".to_string(),
            Side::Antecedent(k) => format!("provider of channel {k}"),
        };
        Err(format!(
            "move {mv} by the {whose} matches no premise of line {}; the adversary was illegal",
            self.current_line()
        ))
    }

    fn charge_space(&self, ctx: &mut Ctx<'_>) {
        let held: u64 = self.bindings.values().map(|v| bit_len(v).max(1)).sum();
        ctx.meter.set_space(held + bit_len(&BigUint::from(self.line)).max(1));
    }
}

impl Agent for ExtractedAgent {
    fn name(&self) -> String {
        self.label.clone()
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        let proof = Arc::clone(&self.proof);
        loop {
            ctx.meter.tick(1);
            self.charge_space(ctx);
            let line = &proof.lines[self.line];
            match &line.rule {
                Rule::Replicate { premise, index } => {
                    self.bundle.replicate(*index).map_err(|e| self.fault(e))?;
                    self.line = position(&proof, *premise);
                }
                Rule::MeetChoose { premise, target, instance } | Rule::JoinChoose { premise, target, instance } => {
                    let mv = self.choice_move(&line.sequent, target, instance).map_err(|e| self.fault(e))?;
                    self.line = position(&proof, *premise);
                    match target.side {
                        Side::Succedent => return Ok(Some(mv)),
                        Side::Antecedent(k) => {
                            let ch = self.bundle.channels.get_mut(k).ok_or_else(|| AgentFault::new("extract", format!("no channel {k}")))?;
                            ch.machine_move(&mv, ctx.meter).map_err(|e| AgentFault::new(self.label.clone(), e))?;
                        }
                    }
                }
                Rule::Wait(ps) => {
                    if ps.is_empty() {
                        return Ok(None);
                    }
                    let adversary = ctx.adversary_moves();
                    let event = if self.seen_env < adversary.len() {
                        let mv = adversary[self.seen_env].to_string();
                        self.seen_env += 1;
                        Some((Side::Succedent, mv))
                    } else {
                        let limit = self.bundle.poll_limit;
                        let mut found = None;
                        for k in 0..self.bundle.len() {
                            let polled = self.bundle.channels[k].poll(limit, ctx.meter);
                            if let Some(mv) = polled.map_err(|e| self.fault(e))? {
                                found = Some((Side::Antecedent(k), mv));
                                break;
                            }
                        }
                        found
                    };
                    match event {
                        None => return Ok(None),
                        Some((side, mv)) => self.follow(side, &mv).map_err(|e| self.fault(e))?,
                    }
                }
            }
        }
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{run_match, MatchConfig, Verdict};
    use crate::strategies::SilentEnv;

    const NUMERALS2: &str = include_str!("../../../../corpus/numerals2.cl12");

    #[test]
    fn numerals_two_extracts_and_wins() {
        let proof = Cl12Proof::parse(NUMERALS2).unwrap();
        let concl = proof.conclusion().unwrap().clone();
        let bundle = canonical_bundle(&concl).unwrap();
        let mut agent = extract_agent(&proof, bundle, &CheckConfig::default()).unwrap();
        let out = run_match(&mut agent, &mut SilentEnv, &concl.succedent, &MatchConfig::default()).unwrap();
        assert_eq!(out.verdict, Verdict::TopWon);
        assert_eq!(out.transcript.last().unwrap().mv, "#10");
        assert_eq!(agent.bundle().len(), 2);
        assert_eq!(out.meter.background, 2);
    }

    #[test]
    fn wrong_bundle_is_refused() {
        let proof = Cl12Proof::parse(NUMERALS2).unwrap();
        assert!(extract_agent(&proof, ProviderBundle::new(), &CheckConfig::default()).is_err());
        let log = ProviderBundle::new().with(Op::Log.game(), Box::new(super::super::axiom_agent(Op::Log)));
        assert!(extract_agent(&proof, log, &CheckConfig::default()).is_err());
    }
}
