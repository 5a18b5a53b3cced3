use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use super::term::{bit_len, from_binary, to_binary};
use super::SyntaxError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    /// The machine, ⊤.
    Top,
    /// The environment, ⊥.
    Bottom,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Top => Player::Bottom,
            Player::Bottom => Player::Top,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Player::Top => "T",
            Player::Bottom => "B",
        }
    }

    pub fn from_token(s: &str) -> Option<Player> {
        match s {
            "T" | "⊤" => Some(Player::Top),
            "B" | "⊥" => Some(Player::Bottom),
            _ => None,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// What a move does at the addressed occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// Picks component 0 or 1 of a binary choice.
    Choose(u8),
    /// Picks a constant for a choice quantifier.
    Const(BigUint),
    /// Picks a variable for a choice quantifier; only used for developments.
    Var(String),
}

/// An address through `&`, `|`, `->` followed by a terminal action.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MovePath {
    pub components: Vec<u8>,
    pub action: Action,
}

impl MovePath {
    pub fn new(components: Vec<u8>, action: Action) -> MovePath {
        MovePath { components, action }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        for c in &self.components {
            s.push(if *c == 0 { '0' } else { '1' });
            s.push('.');
        }
        match &self.action {
            Action::Choose(i) => s.push(if *i == 0 { '0' } else { '1' }),
            Action::Const(c) => {
                s.push('#');
                s.push_str(&to_binary(c));
            }
            Action::Var(x) => {
                s.push('#');
                s.push_str(x);
            }
        }
        s
    }

    pub fn parse(s: &str) -> Result<MovePath, SyntaxError> {
        let bad = |msg: &str| SyntaxError::BadMove { mv: s.to_string(), msg: msg.to_string() };
        let mut parts: Vec<&str> = s.split('.').collect();
        let last = parts.pop().ok_or_else(|| bad("empty move"))?;
        let mut components = Vec::with_capacity(parts.len());
        for p in parts {
            match p {
                "0" => components.push(0),
                "1" => components.push(1),
                _ => return Err(bad("path components must be 0 or 1")),
            }
        }
        let action = match last {
            "0" => Action::Choose(0),
            "1" => Action::Choose(1),
            _ => {
                let rest = last.strip_prefix('#').ok_or_else(|| bad("expected 0, 1 or #constant"))?;
                if rest.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') {
                    if !rest.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                        return Err(bad("malformed variable"));
                    }
                    Action::Var(rest.to_string())
                } else {
                    Action::Const(from_binary(rest).ok_or_else(|| bad("malformed binary constant"))?)
                }
            }
        };
        Ok(MovePath { components, action })
    }
}

impl fmt::Display for MovePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Splits a move into header and numer; the numer defaults to `0` when no `#` occurs.
pub fn split_move(mv: &str) -> (&str, BigUint) {
    match mv.rfind('#') {
        Some(k) => {
            let numer = &mv[k + 1..];
            let value = if numer.bytes().all(|b| b == b'0' || b == b'1') && !numer.is_empty() {
                BigUint::parse_bytes(numer.as_bytes(), 2).unwrap_or_default()
            } else {
                BigUint::zero()
            };
            (&mv[..=k], value)
        }
        None => (mv, BigUint::zero()),
    }
}

pub fn header(mv: &str) -> &str {
    split_move(mv).0
}

pub fn numer(mv: &str) -> BigUint {
    split_move(mv).1
}

/// Bit length of the numer.
pub fn magnitude(mv: &str) -> u64 {
    bit_len(&numer(mv))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Labmove {
    pub player: Player,
    pub mv: String,
}

impl Labmove {
    pub fn new(player: Player, mv: impl Into<String>) -> Labmove {
        Labmove { player, mv: mv.into() }
    }

    pub fn top(mv: impl Into<String>) -> Labmove {
        Labmove::new(Player::Top, mv)
    }

    pub fn bottom(mv: impl Into<String>) -> Labmove {
        Labmove::new(Player::Bottom, mv)
    }

    pub fn header(&self) -> &str {
        header(&self.mv)
    }

    pub fn numer(&self) -> BigUint {
        numer(&self.mv)
    }

    pub fn magnitude(&self) -> u64 {
        magnitude(&self.mv)
    }

    /// Parses `T: 1.#101` or `B: 0`.
    pub fn parse(s: &str) -> Result<Labmove, SyntaxError> {
        let bad = |msg: &str| SyntaxError::BadMove { mv: s.to_string(), msg: msg.to_string() };
        let (who, mv) = s.split_once(':').ok_or_else(|| bad("expected 'T:' or 'B:' prefix"))?;
        let player = Player::from_token(who.trim()).ok_or_else(|| bad("unknown player"))?;
        let mv = mv.trim();
        if mv.is_empty() || mv.contains(char::is_whitespace) {
            return Err(bad("malformed move"));
        }
        Ok(Labmove::new(player, mv))
    }
}

impl fmt::Display for Labmove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.player, self.mv)
    }
}

pub type Position = Vec<Labmove>;

/// Parses a comma- or newline-separated list of labmoves.
pub fn parse_position(s: &str) -> Result<Position, SyntaxError> {
    s.split([',', '\n'])
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(Labmove::parse)
        .collect()
}

pub fn render_position(p: &[Labmove]) -> String {
    p.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ")
}
