mod common;

use clarith::syntax::game::apply_labmove;
use clarith::syntax::moves::{magnitude, parse_position, render_position};
use clarith::syntax::{developments, headers_of, parse_formula, prefixation, Formula, Fresh, Labmove, Player, QuantKind, SyntaxError, Term};
use num_bigint::BigUint;
use proptest::prelude::*;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

#[test]
fn unicode_and_ascii_agree() {
    assert_eq!(f("⊓x ⊔y (y = x′)"), f("call x . cex y . y = x'"));
    assert_eq!(f("∀x (x ≠ 0 → ∃y (x = y′))"), f("all x . (x != 0 -> ex y . x = y')"));
    assert_eq!(f("¬0 = 0′ ∧ 0 = 0"), f("~0 = 0' & 0 = 0"));
    assert_eq!(f("0 = 0 ⊓ 0 = 0′"), f("0 = 0 cand 0 = 0'"));
    assert_eq!(f("0 = 0 ⊔ 0 = 0′"), f("0 = 0 cor 0 = 0'"));
}

#[test]
fn binary_constants_and_numerals() {
    assert_eq!(f("x = #101"), Formula::eq(Term::var("x"), Term::constant(BigUint::from(5u32))));
    assert_eq!(f("x = 0''"), Formula::eq(Term::var("x"), Term::numeral(2)));
}

#[test]
fn negation_of_a_game_is_refused() {
    match parse_formula("~(0 = 0 cor 0 = 0')") {
        Err(SyntaxError::NonElementaryNegation { hint, .. }) => assert!(hint.contains("cand"), "{hint}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn substitution_avoids_capture() {
    let g = f("all y . x = y");
    assert!(matches!(g.substitute("x", &Term::var("y")), Err(SyntaxError::Capture { .. })));
    assert_eq!(g.substitute("x", &Term::Zero).unwrap(), f("all y . 0 = y"));
}

#[test]
fn closure_is_lexicographic() {
    assert_eq!(f("u = v").close(QuantKind::Call), f("call u . call v . u = v"));
    assert!(f("call u . call v . u = v").is_sentence());
}

#[test]
fn elementarization_replaces_surface_choices() {
    let g = f("0 = 0 & (call x . x = x) & (cex y . y = 0)");
    assert_eq!(g.elementarize(), f("0 = 0 & 0 = 0 & 0 = 0'"));
}

#[test]
fn criticality_follows_the_definition() {
    assert!(f("cex x . x = 0").is_critical());
    assert!(f("(call x . x = 0) -> cex y . y = 0").is_critical());
    assert!(!f("call x . x = 0").is_critical());
    assert!(!f("0 = 0").is_critical());
    assert!(f("(0 = 0 cor 0 = 0') & 0 = 0").is_critical());
}

#[test]
fn labmoves_and_positions() {
    let p = parse_position("⊥: 1.#101, T: 1.0").unwrap();
    assert_eq!(p, vec![Labmove::bottom("1.#101"), Labmove::top("1.0")]);
    assert_eq!(render_position(&p), "B: 1.#101, T: 1.0");
    assert_eq!(magnitude("1.#101"), 3);
    assert!(Labmove::parse("X: 0").is_err());
}

#[test]
fn illegal_moves_are_located() {
    let g = f("call x . cex y . y = x'");
    let pos = vec![Labmove::top("#1")];
    match prefixation(&pos, &g) {
        Err(SyntaxError::IllegalMove { index: 0, player: Player::Top, .. }) => {}
        other => panic!("{other:?}"),
    }
}

#[test]
fn headers_include_prefixes() {
    let h = headers_of(&f("0 = 0 & call x . x = x"));
    for want in ["", "1.", "1.#"] {
        assert!(h.contains(want), "{want} missing from {h:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn formulas_round_trip(seed in any::<u64>()) {
        let g = common::formula(&mut common::rng(seed), 4);
        let text = g.to_string();
        let back = parse_formula(&text).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, &g, "{}", text);
    }

    #[test]
    fn normalization_makes_negation_elementary(seed in any::<u64>()) {
        let g = common::formula(&mut common::rng(seed), 4);
        let n = g.normalize();
        prop_assert!(n.negation_normal());
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn developments_agree_with_prefixation(seed in any::<u64>(), c in 0u32..64) {
        let g = common::game(&mut common::rng(seed), 3);
        for player in [Player::Top, Player::Bottom] {
            for (path, dev) in developments(&g, player, &Fresh::Const(BigUint::from(c))) {
                let lm = Labmove::new(player, path.render());
                prop_assert_eq!(prefixation(&[lm.clone()], &g).unwrap(), dev.clone());
                prop_assert_eq!(apply_labmove(&g, &lm).unwrap(), dev);
            }
        }
    }

    #[test]
    fn critical_formulas_are_recognized(seed in any::<u64>()) {
        let mut r = common::rng(seed);
        prop_assert!(common::critical(&mut r, 3).is_critical());
        let neg = common::negated_critical(&mut r, 3);
        prop_assert!(Formula::imp(neg, Formula::cex("z", Formula::truth())).is_critical());
    }
}
