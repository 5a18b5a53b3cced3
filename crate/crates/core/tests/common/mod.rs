//! Seeded generators shared by the integration tests and the acceptance harness.

#![allow(dead_code)]

use clarith::syntax::{Formula, Term};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const VARS: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn var(rng: &mut impl Rng) -> String {
    VARS.choose(rng).expect("nonempty").to_string()
}

pub fn term(rng: &mut impl Rng, depth: u32) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return match rng.gen_range(0..3) {
            0 => Term::Zero,
            1 => Term::constant(BigUint::from(rng.gen_range(1u32..40))),
            _ => Term::var(var(rng)),
        };
    }
    match rng.gen_range(0..3) {
        0 => Term::succ(term(rng, depth - 1)),
        1 => Term::add(term(rng, depth - 1), term(rng, depth - 1)),
        _ => Term::mul(term(rng, depth - 1), term(rng, depth - 1)),
    }
}

pub fn elementary(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::eq(term(rng, 2), term(rng, 2));
    }
    let d = depth - 1;
    match rng.gen_range(0..6) {
        0 => Formula::not(elementary(rng, d)),
        1 => Formula::and(elementary(rng, d), elementary(rng, d)),
        2 => Formula::or(elementary(rng, d), elementary(rng, d)),
        3 => Formula::imp(elementary(rng, d), elementary(rng, d)),
        4 => Formula::forall(var(rng), elementary(rng, d)),
        _ => Formula::exists(var(rng), elementary(rng, d)),
    }
}

/// Any formula; negation only covers elementary subformulas.
pub fn formula(rng: &mut impl Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return elementary(rng, 1);
    }
    let d = depth - 1;
    match rng.gen_range(0..9) {
        0 => Formula::and(formula(rng, d), formula(rng, d)),
        1 => Formula::or(formula(rng, d), formula(rng, d)),
        2 => Formula::imp(formula(rng, d), formula(rng, d)),
        3 => Formula::forall(var(rng), formula(rng, d)),
        4 => Formula::exists(var(rng), formula(rng, d)),
        5 => Formula::cand(formula(rng, d), formula(rng, d)),
        6 => Formula::cor(formula(rng, d), formula(rng, d)),
        7 => Formula::call(var(rng), formula(rng, d)),
        _ => Formula::cex(var(rng), formula(rng, d)),
    }
}

/// A formula with at least one choice operator, closed by choice universals.
pub fn game(rng: &mut impl Rng, depth: u32) -> Formula {
    loop {
        let f = formula(rng, depth);
        if !f.is_elementary() {
            return f.close(clarith::syntax::QuantKind::Call);
        }
    }
}

/// A critical formula, built along the inductive definition.
pub fn critical(rng: &mut impl Rng, depth: u32) -> Formula {
    let d = depth.saturating_sub(1);
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..7) };
    match choice {
        0 => Formula::cor(formula(rng, d), formula(rng, d)),
        1 => Formula::cex(var(rng), formula(rng, d)),
        2 => Formula::forall(var(rng), critical(rng, d)),
        3 => Formula::exists(var(rng), critical(rng, d)),
        4 => Formula::or(critical(rng, d), critical(rng, d)),
        5 if rng.gen_bool(0.5) => Formula::and(critical(rng, d), formula(rng, d)),
        5 => Formula::and(formula(rng, d), critical(rng, d)),
        _ => Formula::imp(negated_critical(rng, d), critical(rng, d)),
    }
}

/// A formula whose negation is critical.
pub fn negated_critical(rng: &mut impl Rng, depth: u32) -> Formula {
    let d = depth.saturating_sub(1);
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..8) };
    match choice {
        0 => Formula::cand(formula(rng, d), formula(rng, d)),
        1 => Formula::call(var(rng), formula(rng, d)),
        2 => Formula::forall(var(rng), negated_critical(rng, d)),
        3 => Formula::exists(var(rng), negated_critical(rng, d)),
        4 => Formula::and(negated_critical(rng, d), negated_critical(rng, d)),
        5 if rng.gen_bool(0.5) => Formula::or(negated_critical(rng, d), formula(rng, d)),
        5 => Formula::or(formula(rng, d), negated_critical(rng, d)),
        6 => Formula::imp(critical(rng, d), formula(rng, d)),
        _ => Formula::imp(formula(rng, d), negated_critical(rng, d)),
    }
}

pub fn big(rng: &mut impl Rng, max_bits: u32) -> BigUint {
    let bits = rng.gen_range(0..=max_bits);
    if bits == 0 {
        return BigUint::default();
    }
    let v: u64 = rng.gen();
    BigUint::from(v >> (64 - bits.min(64)))
}

pub const NUMERALS2: &str = include_str!("../../../../corpus/numerals2.cl12");

/// Single-token edits of the numerals proof: `(line, from, to)`.
pub const MUTATIONS: [(usize, &str, &str); 12] = [
    (1, "|o- y2 = 0''", "|o- y2 = 0'"),
    (1, "y1 = 0',", "y1 = 0,"),
    (2, "JoinChoose(1, S, y2)", "JoinChoose(1, S, y1)"),
    (2, "JoinChoose", "MeetChoose"),
    (2, "|o- cex z", "|o- call z"),
    (3, "Wait(2)", "Wait()"),
    (4, "MeetChoose(3, A1, y1)", "MeetChoose(3, A0, y1)"),
    (4, "y1 = 0', call x", "y1 = 0', all x"),
    (5, "Wait(4)", "Wait(3)"),
    (6, "MeetChoose(5, A0, 0)", "MeetChoose(5, A0, y1)"),
    (7, "Replicate(6, 0)", "Replicate(5, 0)"),
    (7, "z = 0'' ;;", "z = 0''' ;;"),
];

/// The numerals proof with one mutation applied.
pub fn mutate(src: &str, (line, from, to): (usize, &str, &str)) -> String {
    let tag = format!("line {line}:");
    src.lines()
        .map(|l| if l.starts_with(&tag) { assert!(l.contains(from), "{l} lacks {from}"); l.replacen(from, to, 1) } else { l.to_string() })
        .collect::<Vec<_>>()
        .join("\n")
}
