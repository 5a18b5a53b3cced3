//! Terms, formulas, notations, parsing and printing, moves and positions.

pub mod defs;
pub mod formula;
pub mod game;
pub mod moves;
pub mod parser;
pub mod printer;
pub mod sugar;
pub mod term;

use thiserror::Error;

pub use formula::{Formula, QuantKind};
pub use game::{developments, headers_of, prefixation, Fresh};
pub use moves::{Action, Labmove, MovePath, Player, Position};
pub use parser::{parse_ext_term, parse_formula, parse_term};
pub use sugar::{Atom, ExtTerm, Func};
pub use term::Term;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("negation over a non-elementary formula at byte {pos}; normalized form: {hint}")]
    NonElementaryNegation { pos: usize, hint: String },
    #[error("substitution would be captured by binder `{binder}` (variable {var})")]
    Capture { var: String, binder: String },
    #[error("malformed move `{mv}`: {msg}")]
    BadMove { mv: String, msg: String },
    #[error("illegal move #{index} by {player}: {reason}")]
    IllegalMove { index: usize, player: Player, reason: String },
}
