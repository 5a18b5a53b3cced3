mod common;

use clarith::arena::{adjudicate, eval_elementary, eval_with, run_match, EvalConfig, MatchConfig, Truth, Verdict};
use clarith::strategies::{add_agent, ScriptEnv, SilentEnv};
use clarith::syntax::moves::parse_position;
use clarith::syntax::{parse_formula, Formula, Term};
use num_bigint::BigUint;
use proptest::prelude::*;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ev(s: &str) -> Truth {
    eval_elementary(&f(s), &EvalConfig::default())
}

/// Direct evaluation of ground terms and quantifier-free formulas.
fn oracle_term(t: &Term) -> BigUint {
    match t {
        Term::Var(x) => panic!("free variable {x}"),
        Term::Zero => BigUint::default(),
        Term::Const(c) => c.clone(),
        Term::Succ(a) => oracle_term(a) + 1u32,
        Term::Add(a, b) => oracle_term(a) + oracle_term(b),
        Term::Mul(a, b) => oracle_term(a) * oracle_term(b),
    }
}

fn oracle(f: &Formula) -> bool {
    match f {
        Formula::Eq(a, b) => oracle_term(a) == oracle_term(b),
        Formula::Not(a) => !oracle(a),
        Formula::And(a, b) => oracle(a) && oracle(b),
        Formula::Or(a, b) => oracle(a) || oracle(b),
        Formula::Imp(a, b) => !oracle(a) || oracle(b),
        other => panic!("not quantifier-free: {other}"),
    }
}

fn ground(f: &Formula) -> Formula {
    let mut g = f.clone();
    for (i, v) in f.free_vars().into_iter().enumerate() {
        g = g.substitute(&v, &Term::constant(BigUint::from(i as u32 * 7 + 3))).unwrap();
    }
    g
}

fn quantifier_free(rng: &mut impl rand::Rng, depth: u32) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return Formula::eq(common::term(rng, 2), common::term(rng, 2));
    }
    match rng.gen_range(0..4) {
        0 => Formula::not(quantifier_free(rng, depth - 1)),
        1 => Formula::and(quantifier_free(rng, depth - 1), quantifier_free(rng, depth - 1)),
        2 => Formula::or(quantifier_free(rng, depth - 1), quantifier_free(rng, depth - 1)),
        _ => Formula::imp(quantifier_free(rng, depth - 1), quantifier_free(rng, depth - 1)),
    }
}

#[test]
fn notations_evaluate() {
    assert_eq!(ev("#101 + #1101 = #10010"), Truth::True);
    assert_eq!(ev("|#1111| = #100"), Truth::True);
    assert_eq!(ev("Bit(#1, #1011)"), Truth::True);
    assert_eq!(ev("Bit(#10, #1011)"), Truth::False);
    assert_eq!(ev("#11 < #100"), Truth::True);
    assert_eq!(ev("#100 <= #11"), Truth::False);
}

#[test]
fn blind_quantifiers() {
    assert_eq!(ev("all x . x + 0 = x"), Truth::True);
    assert_eq!(ev("all x . x = 0"), Truth::False);
    assert_eq!(ev("ex x . x * x = #1001"), Truth::True);
    assert_eq!(eval_elementary(&f("ex x . x * x = 0''"), &EvalConfig::with_bound(50)), Truth::Unknown);
    assert_eq!(ev("all y < #101 . y * 0 = 0"), Truth::True);
}

#[test]
fn assignments() {
    let g = f("x + y = #101");
    let a = |x: u32, y: u32| vec![("x".to_string(), BigUint::from(x)), ("y".to_string(), BigUint::from(y))];
    assert_eq!(eval_with(&g, &a(2, 3), &EvalConfig::default()), Truth::True);
    assert_eq!(eval_with(&g, &a(2, 2), &EvalConfig::default()), Truth::False);
}

#[test]
fn adjudication_of_runs() {
    let g = f("call x . cex y . y = x'");
    let cfg = EvalConfig::default();
    assert_eq!(adjudicate(&parse_position("B: #101, T: #110").unwrap(), &g, &cfg), Verdict::TopWon);
    assert_eq!(adjudicate(&parse_position("B: #101, T: #111").unwrap(), &g, &cfg), Verdict::BottomWon);
    assert_eq!(adjudicate(&parse_position("B: #101").unwrap(), &g, &cfg), Verdict::BottomWon);
    assert_eq!(adjudicate(&[], &g, &cfg), Verdict::TopWon);
    assert!(matches!(adjudicate(&parse_position("T: #1").unwrap(), &g, &cfg), Verdict::Illegal { index: 0, .. }));
}

#[test]
fn matches_are_metered() {
    let game = f("call u . call v . cex z . z = u + v");
    let mut env = ScriptEnv::new(vec!["#10101".into(), "#1101".into()]);
    let out = run_match(&mut add_agent(), &mut env, &game, &MatchConfig::default()).unwrap();
    assert_eq!(out.verdict, Verdict::TopWon);
    assert_eq!(out.transcript.last().unwrap().to_string(), "T: #100010");
    assert!(out.meter.time > 0 && out.meter.space_peak > 0);
    assert_eq!(out.meter.amplitude, 6);
    assert_eq!(out.meter.background, 5);
    let silent = run_match(&mut add_agent(), &mut SilentEnv, &game, &MatchConfig::default()).unwrap();
    assert_eq!(silent.verdict, Verdict::TopWon);
    assert!(silent.transcript.is_empty());
}

#[test]
fn illegal_environment_moves_lose() {
    let game = f("call u . call v . cex z . z = u + v");
    let mut env = ScriptEnv::new(vec!["0.#1".into()]);
    let out = run_match(&mut add_agent(), &mut env, &game, &MatchConfig::default()).unwrap();
    assert_eq!(out.verdict.winner(), Some(clarith::syntax::Player::Top));
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn quantifier_free_matches_oracle(seed in any::<u64>()) {
        let g = ground(&quantifier_free(&mut common::rng(seed), 3));
        let want = Truth::from_bool(oracle(&g));
        prop_assert_eq!(eval_elementary(&g, &EvalConfig::default()), want, "{}", g);
    }

    #[test]
    fn symbolic_rules_agree_with_instances(seed in any::<u64>()) {
        let g = quantifier_free(&mut common::rng(seed), 2);
        let closed = g.close(clarith::syntax::QuantKind::Forall);
        if let t @ (Truth::True | Truth::False) = eval_elementary(&closed, &EvalConfig::with_bound(6)) {
            let inst = ground(&g);
            if t == Truth::True {
                prop_assert!(oracle(&inst), "{} true but {} false", closed, inst);
            }
        }
    }
}
