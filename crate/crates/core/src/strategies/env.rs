//! Environments: agents that play ⊥ in the succedent game.

use std::io::{BufRead, Write};
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arena::{run_match, Agent, AgentFault, Ctx, MatchConfig, MatchOutcome};
use crate::syntax::game::{apply_labmove, occurrences};
use crate::syntax::term::to_binary;
use crate::syntax::{Formula, Labmove, Player};

/// Never moves.
#[derive(Clone, Copy, Debug, Default)]
pub struct SilentEnv;

impl Agent for SilentEnv {
    fn name(&self) -> String {
        "silent".into()
    }

    fn act(&mut self, _ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        Ok(None)
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(*self)
    }
}

/// Plays a fixed list of moves, one per turn, then passes.
#[derive(Clone, Debug, Default)]
pub struct ScriptEnv {
    moves: Vec<String>,
    next: usize,
}

impl ScriptEnv {
    pub fn new(moves: Vec<String>) -> ScriptEnv {
        ScriptEnv { moves, next: 0 }
    }

    /// One move per line, either bare (`1.#101`) or labelled (`B: 1.#101`);
    /// `%` starts a comment.
    pub fn parse(src: &str) -> Result<ScriptEnv, String> {
        let mut moves = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('%').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mv = match Labmove::parse(line) {
                Ok(lm) if lm.player == Player::Bottom => lm.mv,
                Ok(_) => return Err(format!("line {}: scripts hold environment moves only", i + 1)),
                Err(_) => line.to_string(),
            };
            crate::syntax::MovePath::parse(&mv).map_err(|e| format!("line {}: {e}", i + 1))?;
            moves.push(mv);
        }
        Ok(ScriptEnv::new(moves))
    }
}

impl Agent for ScriptEnv {
    fn name(&self) -> String {
        "script".into()
    }

    fn act(&mut self, _ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        let mv = self.moves.get(self.next).cloned();
        self.next += 1;
        Ok(mv)
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

/// The environment's legal moves in `f`, with quantifier moves drawn from `values`.
pub fn bottom_moves(f: &Formula, values: &[BigUint]) -> Vec<String> {
    let mut out = Vec::new();
    for occ in occurrences(f) {
        if occ.mover != Player::Bottom {
            continue;
        }
        let prefix: String = occ.components.iter().map(|c| format!("{c}.")).collect();
        match occ.formula {
            Formula::Cand(..) | Formula::Cor(..) => {
                out.push(format!("{prefix}0"));
                out.push(format!("{prefix}1"));
            }
            _ => out.extend(values.iter().map(|v| format!("{prefix}#{}", to_binary(v)))),
        }
    }
    out
}

/// Picks uniformly among legal moves, or passes, using a seeded generator.
#[derive(Clone, Debug)]
pub struct RandomEnv {
    seed: u64,
    rng: ChaCha8Rng,
    /// Constants are drawn below `2^max_bits`.
    pub max_bits: u32,
    /// Chance of passing when a move is available.
    pub pass_prob: f64,
}

impl RandomEnv {
    pub fn new(seed: u64) -> RandomEnv {
        RandomEnv { seed, rng: ChaCha8Rng::seed_from_u64(seed), max_bits: 16, pass_prob: 0.2 }
    }
}

impl Agent for RandomEnv {
    fn name(&self) -> String {
        format!("random:{}", self.seed)
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        let occs: Vec<_> = occurrences(ctx.current).into_iter().filter(|o| o.mover == Player::Bottom).collect();
        if occs.is_empty() || self.rng.gen_bool(self.pass_prob) {
            return Ok(None);
        }
        let occ = &occs[self.rng.gen_range(0..occs.len())];
        let prefix: String = occ.components.iter().map(|c| format!("{c}.")).collect();
        let mv = match occ.formula {
            Formula::Cand(..) | Formula::Cor(..) => format!("{prefix}{}", self.rng.gen_range(0..2u8)),
            _ => {
                let bits = self.rng.gen_range(0..=self.max_bits);
                let v = if bits == 0 { BigUint::default() } else { BigUint::from(self.rng.gen::<u64>()) >> (64 - bits.min(64)) };
                format!("{prefix}#{}", to_binary(&v))
            }
        };
        Ok(Some(mv))
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

/// Follows a prescribed list of option indices and records how many
/// options each turn offered. Option 0 is always a pass.
#[derive(Clone, Debug)]
struct Enumerator {
    choices: Vec<usize>,
    arities: Vec<usize>,
    depth: usize,
    values: Vec<BigUint>,
    made: usize,
}

impl Agent for Enumerator {
    fn name(&self) -> String {
        format!("exhaustive:{}", self.depth)
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        let mut options = vec![None];
        if self.made < self.depth {
            options.extend(bottom_moves(ctx.current, &self.values).into_iter().map(Some));
        }
        let turn = self.arities.len();
        let pick = self.choices.get(turn).copied().unwrap_or(0).min(options.len() - 1);
        self.arities.push(options.len());
        let mv = options.swap_remove(pick);
        if mv.is_some() {
            self.made += 1;
        }
        Ok(mv)
    }

    fn boxed_clone(&self) -> Box<dyn Agent> {
        Box::new(self.clone())
    }
}

/// Default constants used by exhaustive environments.
pub fn small_values() -> Vec<BigUint> {
    (0u32..4).map(BigUint::from).collect()
}

/// Stops enumeration runaway on wide games.
pub const MAX_EXHAUSTIVE_RUNS: usize = 20_000;

/// Plays `top` against every environment making at most `depth` moves,
/// each chosen among passes, binary choices and the constants in `values`.
/// Returns the outcomes together with the environment's moves.
pub fn exhaustive_matches(
    top: &dyn Agent,
    game: &Formula,
    depth: usize,
    values: &[BigUint],
    cfg: &MatchConfig,
) -> Result<Vec<MatchOutcome>, AgentFault> {
    let mut outcomes = Vec::new();
    let mut choices: Vec<usize> = Vec::new();
    loop {
        let mut env = Enumerator { choices: choices.clone(), arities: Vec::new(), depth, values: values.to_vec(), made: 0 };
        let mut agent = top.boxed_clone();
        outcomes.push(run_match(agent.as_mut(), &mut env, game, cfg)?);
        if outcomes.len() >= MAX_EXHAUSTIVE_RUNS {
            return Ok(outcomes);
        }
        let mut taken: Vec<usize> = (0..env.arities.len()).map(|i| choices.get(i).copied().unwrap_or(0)).collect();
        loop {
            match taken.pop() {
                None => return Ok(outcomes),
                Some(c) if c + 1 < env.arities[taken.len()] => {
                    taken.push(c + 1);
                    break;
                }
                Some(_) => {}
            }
        }
        choices = taken;
    }
}

struct ReplIo {
    input: Box<dyn BufRead + Send>,
    output: Box<dyn Write + Send>,
}

/// Asks a person for each environment move. An empty line or `pass`
/// passes; illegal input is reported and asked for again.
#[derive(Clone)]
pub struct ReplEnv {
    io: Arc<Mutex<ReplIo>>,
}

impl ReplEnv {
    pub fn new(input: Box<dyn BufRead + Send>, output: Box<dyn Write + Send>) -> ReplEnv {
        ReplEnv { io: Arc::new(Mutex::new(ReplIo { input, output })) }
    }

    pub fn stdio() -> ReplEnv {
        ReplEnv::new(Box::new(std::io::BufReader::new(std::io::stdin())), Box::new(std::io::stderr()))
    }
}

impl Agent for ReplEnv {
    fn name(&self) -> String {
        "repl".into()
    }

    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault> {
        let mut io = self.io.lock().map_err(|_| AgentFault::new("repl", "terminal lock poisoned"))?;
        let io = &mut *io;
        let fault = |e: std::io::Error| AgentFault::new("repl", e.to_string());
        loop {
            writeln!(io.output, "game: {}", ctx.current).map_err(fault)?;
            write!(io.output, "⊥> ").map_err(fault)?;
            io.output.flush().map_err(fault)?;
            let mut line = String::new();
            if io.input.read_line(&mut line).map_err(fault)? == 0 {
                return Ok(None);
            }
            let text = line.trim();
            if text.is_empty() || text == "pass" {
                return Ok(None);
            }
            let mv = match Labmove::parse(text) {
                Ok(lm) if lm.player == Player::Bottom => lm.mv,
                Ok(_) => {
                    writeln!(io.output, "error: you play ⊥").map_err(fault)?;
                    continue;
                }
                Err(_) => text.to_string(),
            };
            match apply_labmove(ctx.current, &Labmove::new(Player::Bottom, mv.clone())) {
                Ok(_) => return Ok(Some(mv)),
                Err(e) => writeln!(io.output, "error: illegal move {mv}: {e}").map_err(fault)?,
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
    use crate::arena::Verdict;
    use crate::strategies::{add_agent, Op};

    #[test]
    fn script_parses_both_forms() {
        let s = ScriptEnv::parse("% inputs\n#101\nB: #11\n").unwrap();
        assert_eq!(s.moves, vec!["#101", "#11"]);
        assert!(ScriptEnv::parse("T: #1").is_err());
        assert!(ScriptEnv::parse("#12").is_err());
    }

    #[test]
    fn exhaustive_covers_small_inputs() {
        let out = exhaustive_matches(&add_agent(), &Op::Add.game(), 2, &small_values(), &MatchConfig::default()).unwrap();
        // One run per pair, plus runs where the environment stops early.
        assert_eq!(out.len(), 1 + 4 + 16);
        assert!(out.iter().all(|o| o.verdict == Verdict::TopWon));
    }

    #[test]
    fn random_env_is_reproducible() {
        let game = Op::Add.game();
        let run = |seed| {
            let mut env = RandomEnv::new(seed);
            run_match(&mut add_agent(), &mut env, &game, &MatchConfig::default()).unwrap().transcript
        };
        assert_eq!(run(7), run(7));
    }

    #[test]
    fn repl_rejects_then_accepts() {
        let input = std::io::Cursor::new(b"1.#1\n#101\n".to_vec());
        let sink: Arc<Mutex<Vec<u8>>> = Arc::default();
        struct Sink(Arc<Mutex<Vec<u8>>>);
        impl Write for Sink {
            fn write(&mut self, b: &[u8]) -> std::io::Result<usize> {
                self.0.lock().unwrap().extend_from_slice(b);
                Ok(b.len())
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        let mut env = ReplEnv::new(Box::new(input), Box::new(Sink(sink.clone())));
        let game = Op::Successor.game();
        let mut meter = crate::arena::Meter::default();
        let mut ctx = Ctx { role: Player::Bottom, game: &game, current: &game, position: &[], meter: &mut meter };
        assert_eq!(env.act(&mut ctx).unwrap(), Some("#101".to_string()));
        let shown = String::from_utf8(sink.lock().unwrap().clone()).unwrap();
        assert!(shown.contains("error: illegal move 1.#1"));
    }
}
