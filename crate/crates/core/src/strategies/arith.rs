//! Axiom, arithmetic, numeral and bound-evaluation agents.

use num_bigint::BigUint;
use num_traits::Zero;

use super::serial;
use crate::arena::{Agent, AgentFault, Ctx, Meter};
use crate::bounds::BoundExpr;
use crate::syntax::moves::numer;
use crate::syntax::term::{bit_len, to_binary};
use crate::syntax::{parse_formula, Formula};

/// The games the built-in agents are written for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Successor,
    Log,
    Bit,
    Add,
    Sub,
    Mult,
    Tri,
    Br(u8),
    Div2,
    Bitsum,
}

impl Op {
    pub const ALL: [Op; 11] = [
        Op::Successor,
        Op::Log,
        Op::Bit,
        Op::Add,
        Op::Sub,
        Op::Mult,
        Op::Tri,
        Op::Br(0),
        Op::Br(1),
        Op::Div2,
        Op::Bitsum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Successor => "successor",
            Op::Log => "log",
            Op::Bit => "bit",
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mult => "mult",
            Op::Tri => "tri",
            Op::Br(0) => "br0",
            Op::Br(_) => "br1",
            Op::Div2 => "div2",
            Op::Bitsum => "bitsum",
        }
    }

    pub fn from_name(s: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|o| o.name() == s)
    }

    /// Source text of the game, in the surface syntax.
    pub fn game_source(self) -> &'static str {
        match self {
            Op::Successor => "call x . cex y . y = x'",
            Op::Log => "call x . cex y . y = |x|",
            Op::Bit => "call x . call y . (Bit(y, x) cor ~Bit(y, x))",
            Op::Add => "call u . call v . cex z . z = u + v",
            Op::Sub => "call u . call v . cex z . z = monus(u, v)",
            Op::Mult => "call u . call v . cex z . z = u * v",
            Op::Tri => "call u . call v . (u < v cor (u = v cor u > v))",
            Op::Br(0) => "call x . call s . (x < |s| -> cex z . z = br0(x, s))",
            Op::Br(_) => "call x . call s . (x < |s| -> cex z . z = br1(x, s))",
            Op::Div2 => "call u . cex z . z = half(u)",
            Op::Bitsum => "call x . call y . call u . call v . cex z . z = bitsum(x, y, u, v)",
        }
    }

    pub fn game(self) -> Formula {
        parse_formula(self.game_source()).expect("built-in game parses")
    }

    /// Number of environment inputs read before answering.
    pub fn arity(self) -> usize {
        match self {
            Op::Successor | Op::Log | Op::Div2 => 1,
            Op::Bitsum => 4,
            _ => 2,
        }
    }

    /// The machine's answer as a sequence of moves, or `None` when the
    /// game leaves nothing to do (a false `Br` precondition).
    pub fn answer(self, inputs: &[BigUint], meter: &mut Meter) -> Option<Vec<String>> {
        let num = |n: BigUint| format!("#{}", to_binary(&n));
        let moves = match self {
            Op::Successor => vec![num(serial::add(&inputs[0], &BigUint::from(1u32), meter))],
            Op::Log => vec![num(serial::length(&inputs[0], meter))],
            Op::Bit => {
                meter.tick(1);
                let y = u64::try_from(&inputs[1]).ok();
                let set = y.is_some_and(|y| inputs[0].bit(y));
                vec![if set { "0" } else { "1" }.to_string()]
            }
            Op::Add => vec![num(serial::add(&inputs[0], &inputs[1], meter))],
            Op::Sub => vec![num(serial::monus(&inputs[0], &inputs[1], meter))],
            Op::Mult => vec![num(serial::mult(&inputs[0], &inputs[1], meter))],
            Op::Tri => match serial::compare(&inputs[0], &inputs[1], meter) {
                std::cmp::Ordering::Less => vec!["0".into()],
                std::cmp::Ordering::Equal => vec!["1".into(), "0".into()],
                std::cmp::Ordering::Greater => vec!["1".into(), "1".into()],
            },
            Op::Br(i) => vec![format!("1.{}", num(serial::br(i, &inputs[0], &inputs[1], meter)?))],
            Op::Div2 => vec![num(serial::half(&inputs[0], meter))],
            Op::Bitsum => vec![num(serial::bitsum(&inputs[0], &inputs[1], &inputs[2], &inputs[3], meter))],
        };
        Some(moves)
    }
}

/// Reads its inputs from the environment's first moves, then plays the
/// answer one move per turn.
#[derive(Clone, Debug)]
pub struct OpAgent {
    op: Op,
    plan: Option<Vec<String>>,
    next: usize,
}

impl OpAgent {
    pub fn new(op: Op) -> OpAgent {
        OpAgent { op, plan: None, next: 0 }
    }

    pub fn op(&self) -> Op {
        self.op
    }
}

impl Agent for OpAgent {
    fn name(&self) -> String {
        self.op.name().to_string()
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        if self.plan.is_none() {
            let seen = ctx.adversary_moves();
            if seen.len() < self.op.arity() {
                return Ok(None);
            }
            let inputs: Vec<BigUint> = seen[..self.op.arity()].iter().map(|m| numer(m)).collect();
            self.plan = Some(self.op.answer(&inputs, ctx.meter).unwrap_or_default());
        }
        let plan = self.plan.as_ref().expect("plan set above");
        match plan.get(self.next) {
            Some(mv) => {
                self.next += 1;
                Ok(Some(mv.clone()))
            }
            None => Ok(None),
        }
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

pub fn axiom_agent(which: Op) -> OpAgent {
    OpAgent::new(which)
}

pub fn add_agent() -> OpAgent {
    OpAgent::new(Op::Add)
}

pub fn sub_agent() -> OpAgent {
    OpAgent::new(Op::Sub)
}

pub fn mult_agent() -> OpAgent {
    OpAgent::new(Op::Mult)
}

pub fn tri_agent() -> OpAgent {
    OpAgent::new(Op::Tri)
}

pub fn br_agent(i: u8) -> OpAgent {
    OpAgent::new(Op::Br(i.min(1)))
}

pub fn div2_agent() -> OpAgent {
    OpAgent::new(Op::Div2)
}

pub fn bitsum_agent() -> OpAgent {
    OpAgent::new(Op::Bitsum)
}

/// The game `cex z . z = n` with `n` written as a unary numeral.
pub fn numeral_game(n: usize) -> Formula {
    Formula::cex("z", Formula::eq(crate::syntax::Term::var("z"), crate::syntax::Term::numeral(n)))
}

/// Wins `cex z . z = n` by asking a Successor provider for `0'`, `0''`, ...
/// and then naming the last answer.
#[derive(Clone)]
pub struct NumeralAgent {
    n: usize,
    channel: super::providers::Channel,
    value: BigUint,
    log: Vec<Vec<crate::syntax::Labmove>>,
    done: bool,
    pub poll_limit: usize,
}

pub fn numeral_agent(n: usize) -> NumeralAgent {
    numeral_agent_with(n, Box::new(axiom_agent(Op::Successor)))
}

/// A numeral agent whose Successor provider is `provider`.
pub fn numeral_agent_with(n: usize, provider: Box<dyn Agent>) -> NumeralAgent {
    NumeralAgent {
        n,
        channel: super::providers::Channel::new(Op::Successor.game(), provider),
        value: BigUint::zero(),
        log: Vec::new(),
        done: false,
        poll_limit: super::providers::DEFAULT_POLL_LIMIT,
    }
}

impl NumeralAgent {
    /// Successor calls made so far.
    pub fn provider_calls(&self) -> usize {
        self.log.len()
    }

    /// The position reached in each successor copy used.
    pub fn call_log(&self) -> &[Vec<crate::syntax::Labmove>] {
        &self.log
    }
}

impl Agent for NumeralAgent {
    fn name(&self) -> String {
        format!("numeral:{}", self.n)
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        if self.done {
            return Ok(None);
        }
        while self.log.len() < self.n {
            ctx.meter.tick(1);
            ctx.meter.set_space(bit_len(&self.value).max(1));
            let mut ch = self.channel.clone();
            let ask = format!("#{}", to_binary(&self.value));
            ch.machine_move(&ask, ctx.meter).map_err(|e| AgentFault::new(self.name(), e))?;
            let answer = ch
                .poll(self.poll_limit, ctx.meter)
                .map_err(|e| AgentFault::new(self.name(), e))?
                .ok_or_else(|| AgentFault::new(self.name(), "successor provider stayed silent"))?;
            let expected = &self.value + 1u32;
            if numer(&answer) != expected || !answer.starts_with('#') {
                return Err(AgentFault::new(
                    self.name(),
                    format!("provider {} answered {answer} for the successor of {}", ch.provider_name(), self.value),
                ));
            }
            self.value = expected;
            self.log.push(ch.position.clone());
        }
        self.done = true;
        ctx.meter.set_space(0);
        Ok(Some(format!("#{}", to_binary(&self.value))))
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

/// `call x1 ... call xn . cex z . z = b(|x1|,...,|xn|)`, the variables of `b` in order.
pub fn bound_game(b: &BoundExpr) -> Formula {
    let body = crate::syntax::sugar::eq(crate::syntax::ExtTerm::Var("z".into()), b.applied_to_lengths());
    let mut f = Formula::cex("z", body);
    for x in b.vars().into_iter().rev() {
        f = Formula::call(x, f);
    }
    f
}

/// Exponents above this many bits are refused.
pub const BOUND_EVAL_GUARD: u64 = 1 << 22;

/// Computes the lengths of its inputs and then evaluates `b` on them.
#[derive(Clone, Debug)]
pub struct BoundEvalAgent {
    bound: BoundExpr,
    done: bool,
}

pub fn bound_eval_agent(b: BoundExpr) -> BoundEvalAgent {
    BoundEvalAgent { bound: b, done: false }
}

/// Bits needed to hold `v`, storing a power of two by its exponent.
fn compressed_len(v: &BigUint) -> u64 {
    let l = bit_len(v);
    if l > 1 && v.trailing_zeros() == Some(l - 1) {
        bit_len(&BigUint::from(l - 1)) + 1
    } else {
        l
    }
}

impl BoundEvalAgent {
    /// Evaluates bottom-up, charging each node its compressed width in time
    /// and keeping the widest proper subresult as live space.
    fn eval(&self, e: &BoundExpr, env: &std::collections::BTreeMap<String, BigUint>, meter: &mut Meter, top: bool) -> Result<BigUint, String> {
        let v = match e {
            BoundExpr::Var(x) => env.get(x).cloned().unwrap_or_default(),
            BoundExpr::Zero => BigUint::zero(),
            BoundExpr::Succ(a) => self.eval(a, env, meter, false)? + 1u32,
            BoundExpr::Add(a, b) => self.eval(a, env, meter, false)? + self.eval(b, env, meter, false)?,
            BoundExpr::Mul(a, b) => self.eval(a, env, meter, false)? * self.eval(b, env, meter, false)?,
            BoundExpr::Len(a) => BigUint::from(bit_len(&self.eval(a, env, meter, false)?)),
            BoundExpr::Exp2(a) => {
                let x = self.eval(a, env, meter, false)?;
                match u64::try_from(&x).ok().filter(|&x| x <= BOUND_EVAL_GUARD) {
                    Some(x) => BigUint::from(1u32) << x,
                    None => return Err(format!("blow-up guard: 2^{x} in {}", self.bound)),
                }
            }
        };
        let w = compressed_len(&v);
        meter.tick(1 + w);
        if !top {
            meter.space_peak = meter.space_peak.max(meter.space + w);
        }
        Ok(v)
    }
}

impl Agent for BoundEvalAgent {
    fn name(&self) -> String {
        format!("bound:{}", self.bound)
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        let vars: Vec<String> = self.bound.vars().into_iter().collect();
        if self.done {
            return Ok(None);
        }
        let seen: Vec<BigUint> = ctx.adversary_moves().into_iter().map(numer).collect();
        if seen.len() < vars.len() {
            return Ok(None);
        }
        let mut env = std::collections::BTreeMap::new();
        let mut held = 0;
        for (x, mv) in vars.iter().zip(&seen) {
            let l = serial::length(mv, ctx.meter);
            held += bit_len(&l);
            env.insert(x.clone(), l);
        }
        ctx.meter.set_space(held);
        let z = self.eval(&self.bound, &env, ctx.meter, true).map_err(|e| AgentFault::new(self.name(), e))?;
        ctx.meter.tick(bit_len(&z));
        ctx.meter.set_space(0);
        self.done = true;
        Ok(Some(format!("#{}", to_binary(&z))))
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{run_match, MatchConfig, Verdict};
    use crate::strategies::ScriptEnv;

    fn play(agent: &mut dyn Agent, game: &Formula, script: &[&str]) -> (Vec<String>, Verdict) {
        let mut env = ScriptEnv::new(script.iter().map(|s| s.to_string()).collect());
        let out = run_match(agent, &mut env, game, &MatchConfig::default()).unwrap();
        let top = out.transcript.iter().filter(|l| l.player == crate::syntax::Player::Top).map(|l| l.mv.clone()).collect();
        (top, out.verdict)
    }

    #[test]
    fn axiom_agents_answer() {
        let (m, v) = play(&mut axiom_agent(Op::Successor), &Op::Successor.game(), &["#101"]);
        assert_eq!((m, v), (vec!["#110".to_string()], Verdict::TopWon));
        let (m, v) = play(&mut axiom_agent(Op::Log), &Op::Log.game(), &["#1111"]);
        assert_eq!((m, v), (vec!["#100".to_string()], Verdict::TopWon));
        let (m, v) = play(&mut axiom_agent(Op::Bit), &Op::Bit.game(), &["#1011", "#10"]);
        assert_eq!((m, v), (vec!["1".to_string()], Verdict::TopWon));
    }

    #[test]
    fn tri_picks_greater() {
        let (m, v) = play(&mut tri_agent(), &Op::Tri.game(), &["#111", "#100"]);
        assert_eq!(m, vec!["1", "1"]);
        assert_eq!(v, Verdict::TopWon);
    }

    #[test]
    fn br_passes_out_of_range() {
        let (m, v) = play(&mut br_agent(0), &Op::Br(0).game(), &["#111", "#101"]);
        assert!(m.is_empty());
        assert_eq!(v, Verdict::TopWon);
        let (m, _) = play(&mut br_agent(0), &Op::Br(0).game(), &["#0", "#101"]);
        assert_eq!(m, vec!["1.#100"]);
    }

    #[test]
    fn bound_eval_follows_lengths() {
        let b = BoundExpr::parse("|x|").unwrap();
        let (m, v) = play(&mut bound_eval_agent(b.clone()), &bound_game(&b), &["#1111"]);
        assert_eq!((m, v), (vec!["#11".to_string()], Verdict::TopWon));
        let b = BoundExpr::parse("x").unwrap();
        let (m, _) = play(&mut bound_eval_agent(b.clone()), &bound_game(&b), &["#101"]);
        assert_eq!(m, vec!["#11"]);
        let b = BoundExpr::parse("2^x").unwrap();
        let (m, v) = play(&mut bound_eval_agent(b.clone()), &bound_game(&b), &["#11"]);
        assert_eq!((m, v), (vec!["#100".to_string()], Verdict::TopWon));
    }

    #[test]
    fn numeral_zero_makes_no_calls() {
        let mut a = numeral_agent(0);
        let (m, v) = play(&mut a, &numeral_game(0), &[]);
        assert_eq!((m, v), (vec!["#0".to_string()], Verdict::TopWon));
        assert_eq!(a.provider_calls(), 0);
    }
}
