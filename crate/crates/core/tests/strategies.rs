use clarith::arena::{run_match, MatchConfig, Meter, Verdict};
use clarith::cl12::{CheckConfig, Cl12Proof};
use clarith::strategies::serial::{add, borrow_trace, carry_trace, compare, monus, mult};
use clarith::strategies::{
    add_agent, canonical_bundle, exhaustive_matches, extract_agent, small_values, tri_agent, Op, RandomEnv, ScriptEnv,
    SilentEnv,
};
use clarith::syntax::term::{bit_len, to_binary};
use num_bigint::BigUint;
use proptest::prelude::*;

fn bin(s: &str) -> BigUint {
    BigUint::parse_bytes(s.as_bytes(), 2).unwrap()
}

fn corpus() -> Vec<(String, Cl12Proof)> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cl12") {
            let p = Cl12Proof::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
            out.push((path.display().to_string(), p));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

#[test]
fn worked_values() {
    let mut m = Meter::default();
    assert_eq!(add(&bin("10101"), &bin("1101"), &mut m), bin("100010"));
    assert_eq!(mult(&bin("11011"), &bin("101"), &mut m), bin("10000111"));
    assert_eq!(borrow_trace(&bin("110"), &bin("101")), vec![true, false, false]);
    assert_eq!(carry_trace(&bin("1"), &bin("1")), vec![true]);
    let game = Op::Tri.game();
    let mut env = ScriptEnv::new(vec!["#111".into(), "#100".into()]);
    let out = run_match(&mut tri_agent(), &mut env, &game, &MatchConfig::default()).unwrap();
    let own: Vec<String> = out.transcript.iter().filter(|l| l.player == clarith::syntax::Player::Top).map(|l| l.mv.clone()).collect();
    assert_eq!(own, ["1", "1"]);
    assert_eq!(out.verdict, Verdict::TopWon);
}

#[test]
fn extracted_agents_win_exhaustively() {
    let cfg = CheckConfig::default();
    for (name, proof) in corpus() {
        let concl = proof.conclusion().unwrap().clone();
        let agent = extract_agent(&proof, canonical_bundle(&concl).unwrap(), &cfg).unwrap();
        let outcomes = exhaustive_matches(&agent, &concl.succedent, 2, &small_values(), &MatchConfig::default()).unwrap();
        assert!(!outcomes.is_empty());
        for o in outcomes {
            assert_eq!(o.verdict, Verdict::TopWon, "{name}\n{}", o.render());
        }
    }
}

#[test]
fn extracted_agents_beat_random_environments() {
    let cfg = CheckConfig::default();
    for (name, proof) in corpus() {
        let concl = proof.conclusion().unwrap().clone();
        for seed in 0..20 {
            let mut agent = extract_agent(&proof, canonical_bundle(&concl).unwrap(), &cfg).unwrap();
            let out = run_match(&mut agent, &mut RandomEnv::new(seed), &concl.succedent, &MatchConfig::default()).unwrap();
            assert_eq!(out.verdict, Verdict::TopWon, "{name} seed {seed}\n{}", out.render());
        }
    }
}

#[test]
fn silent_environment_is_answered() {
    let game = clarith::syntax::parse_formula("cex z . z = 0''").unwrap();
    let (_, proof) = corpus().into_iter().find(|(n, _)| n.ends_with("numerals2.cl12")).unwrap();
    let concl = proof.conclusion().unwrap().clone();
    let mut agent = extract_agent(&proof, canonical_bundle(&concl).unwrap(), &CheckConfig::default()).unwrap();
    let out = run_match(&mut agent, &mut SilentEnv, &game, &MatchConfig::default()).unwrap();
    assert_eq!(out.transcript.last().unwrap().to_string(), "T: #10");
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn serial_arithmetic_matches_bigint(u in any::<u64>(), v in any::<u64>()) {
        let (bu, bv) = (BigUint::from(u), BigUint::from(v));
        let mut m = Meter::default();
        prop_assert_eq!(add(&bu, &bv, &mut m), &bu + &bv);
        prop_assert_eq!(mult(&bu, &bv, &mut m), &bu * &bv);
        prop_assert_eq!(monus(&bu, &bv, &mut m), BigUint::from(u.saturating_sub(v)));
        prop_assert_eq!(compare(&bu, &bv, &mut m), u.cmp(&v));
    }

    #[test]
    fn add_stays_within_its_meter(u in any::<u64>(), v in any::<u64>(), shift in 0u32..64) {
        let (bu, bv) = (BigUint::from(u >> shift), BigUint::from(v));
        let game = Op::Add.game();
        let mut env = ScriptEnv::new(vec![format!("#{}", to_binary(&bu)), format!("#{}", to_binary(&bv))]);
        let out = run_match(&mut add_agent(), &mut env, &game, &MatchConfig::default()).unwrap();
        prop_assert_eq!(out.verdict, Verdict::TopWon);
        let n = bit_len(&bu) + bit_len(&bv);
        prop_assert!(out.meter.space_peak <= 64 * n + 64);
        prop_assert!(out.meter.amplitude <= n);
    }
}
