//! Adjudication of runs and metered matches between two agents.

use std::fmt;

use thiserror::Error;

use super::eval::{eval_elementary, EvalConfig, Truth};
use crate::syntax::game::apply_labmove;
use crate::syntax::moves::{magnitude, Labmove, Player};
use crate::syntax::{prefixation, Formula, SyntaxError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    TopWon,
    BottomWon,
    Undetermined,
    Illegal { player: Player, index: usize },
}

impl Verdict {
    pub fn winner(&self) -> Option<Player> {
        match self {
            Verdict::TopWon => Some(Player::Top),
            Verdict::BottomWon => Some(Player::Bottom),
            Verdict::Illegal { player, .. } => Some(player.opponent()),
            Verdict::Undetermined => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::TopWon => f.write_str("T-won"),
            Verdict::BottomWon => f.write_str("B-won"),
            Verdict::Undetermined => f.write_str("undetermined"),
            Verdict::Illegal { player, index } => write!(f, "illegal({player}, {index})"),
        }
    }
}

/// Who won a finished run of `x`.
pub fn adjudicate(pos: &[Labmove], x: &Formula, cfg: &EvalConfig) -> Verdict {
    match prefixation(pos, x) {
        Err(SyntaxError::IllegalMove { index, player, .. }) => Verdict::Illegal { player, index },
        Err(_) => Verdict::Undetermined,
        Ok(h) => match eval_elementary(&h.elementarize(), cfg) {
            Truth::True => Verdict::TopWon,
            Truth::False => Verdict::BottomWon,
            Truth::Unknown => Verdict::Undetermined,
        },
    }
}

/// Resource accounting for one player. Space is registered cooperatively.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Meter {
    pub time: u64,
    pub space: u64,
    pub space_peak: u64,
    pub amplitude: u64,
    pub background: u64,
}

impl Meter {
    pub fn tick(&mut self, n: u64) {
        self.time += n;
    }

    pub fn alloc(&mut self, cells: u64) {
        self.space += cells;
        self.space_peak = self.space_peak.max(self.space);
    }

    pub fn release(&mut self, cells: u64) {
        self.space = self.space.saturating_sub(cells);
    }

    /// Sets the live space to an absolute value.
    pub fn set_space(&mut self, cells: u64) {
        self.space = cells;
        self.space_peak = self.space_peak.max(cells);
    }

    pub fn own_move(&mut self, mv: &str) {
        self.amplitude = self.amplitude.max(magnitude(mv));
    }

    pub fn adversary_move(&mut self, mv: &str) {
        self.background = self.background.max(magnitude(mv));
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("agent {agent} failed: {msg}")]
pub struct AgentFault {
    pub agent: String,
    pub msg: String,
}

impl AgentFault {
    pub fn new(agent: impl Into<String>, msg: impl Into<String>) -> AgentFault {
        AgentFault { agent: agent.into(), msg: msg.into() }
    }
}

/// What an agent sees when offered a move.
pub struct Ctx<'a> {
    pub role: Player,
    pub game: &'a Formula,
    /// The game as brought down by the position so far.
    pub current: &'a Formula,
    pub position: &'a [Labmove],
    pub meter: &'a mut Meter,
}

impl Ctx<'_> {
    /// Moves of the adversary, in order.
    pub fn adversary_moves(&self) -> Vec<&str> {
        self.position.iter().filter(|l| l.player != self.role).map(|l| l.mv.as_str()).collect()
    }

    pub fn own_moves(&self) -> Vec<&str> {
        self.position.iter().filter(|l| l.player == self.role).map(|l| l.mv.as_str()).collect()
    }
}

/// An interactive strategy. Returning `Ok(None)` passes.
pub trait Agent: Send {
    fn name(&self) -> String;
    fn act(&mut self, ctx: &mut Ctx<'_>) -> Result<Option<String>, AgentFault>;
    fn boxed_clone(&self) -> Box<dyn Agent>;
}

impl Clone for Box<dyn Agent> {
    fn clone(&self) -> Self {
        self.boxed_clone()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MatchConfig {
    pub eval: EvalConfig,
    pub max_moves: usize,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig { eval: EvalConfig::default(), max_moves: 256 }
    }
}

#[derive(Clone, Debug)]
pub struct MoveRecord {
    pub labmove: Labmove,
    pub magnitude: u64,
    /// The background when the move was made.
    pub background: u64,
    /// Snapshot of the machine's meter after the move.
    pub meter: Meter,
}

#[derive(Clone, Debug)]
pub struct MatchOutcome {
    pub transcript: Vec<Labmove>,
    pub records: Vec<MoveRecord>,
    pub verdict: Verdict,
    pub meter: Meter,
    pub final_game: Option<Formula>,
}

impl MatchOutcome {
    pub fn render(&self) -> String {
        let mut s = String::new();
        for l in &self.transcript {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        s.push_str(&format!("verdict: {}\n", self.verdict));
        s.push_str(&format!("moves: {}\n", self.transcript.len()));
        s.push_str(&format!("time: {}\n", self.meter.time));
        s.push_str(&format!("space: {}\n", self.meter.space_peak));
        s.push_str(&format!("amplitude: {}\n", self.meter.amplitude));
        s.push_str(&format!("background: {}\n", self.meter.background));
        s
    }
}

/// Plays `top` (as ⊤) against `env` (as ⊥) on the sentence `game`.
/// The environment is offered first and a pass is always allowed; play
/// stops after two consecutive passes or `max_moves` moves.
pub fn run_match(
    top: &mut dyn Agent,
    env: &mut dyn Agent,
    game: &Formula,
    cfg: &MatchConfig,
) -> Result<MatchOutcome, AgentFault> {
    let mut transcript: Vec<Labmove> = Vec::new();
    let mut records = Vec::new();
    let mut meter = Meter::default();
    let mut env_meter = Meter::default();
    let mut current = game.clone();
    let mut passes = 0;
    let mut turn = Player::Bottom;
    while passes < 2 && transcript.len() < cfg.max_moves {
        let offered = {
            let (agent, m): (&mut dyn Agent, &mut Meter) = match turn {
                Player::Top => (&mut *top, &mut meter),
                Player::Bottom => (&mut *env, &mut env_meter),
            };
            m.tick(1);
            let mut ctx = Ctx { role: turn, game, current: &current, position: &transcript, meter: m };
            agent.act(&mut ctx)?
        };
        match offered {
            None => passes += 1,
            Some(mv) => {
                passes = 0;
                let lm = Labmove::new(turn, mv.clone());
                let background = meter.background;
                match turn {
                    Player::Top => meter.own_move(&mv),
                    Player::Bottom => meter.adversary_move(&mv),
                }
                let next = apply_labmove(&current, &lm);
                transcript.push(lm.clone());
                records.push(MoveRecord { magnitude: magnitude(&mv), background, labmove: lm, meter: meter.clone() });
                match next {
                    Ok(g) => current = g,
                    Err(_) => {
                        let index = transcript.len() - 1;
                        return Ok(MatchOutcome {
                            transcript,
                            records,
                            verdict: Verdict::Illegal { player: turn, index },
                            meter,
                            final_game: None,
                        });
                    }
                }
            }
        }
        turn = turn.opponent();
    }
    let verdict = match eval_elementary(&current.elementarize(), &cfg.eval) {
        Truth::True => Verdict::TopWon,
        Truth::False => Verdict::BottomWon,
        Truth::Unknown => Verdict::Undetermined,
    };
    Ok(MatchOutcome { transcript, records, verdict, meter, final_game: Some(current) })
}
