use std::collections::BTreeMap;

use clarith::bounds::{
    check_regularity, closure_contains, dds_triples, default_grid, dominated, standard_class, AuditConfig, BoundExpr, Membership,
    Triple,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn b(s: &str) -> BoundExpr {
    BoundExpr::parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// Reference evaluator over u128 with `|a|` as the binary length.
fn oracle(e: &BoundExpr, env: &BTreeMap<String, u128>) -> Option<u128> {
    Some(match e {
        BoundExpr::Var(v) => *env.get(v)?,
        BoundExpr::Zero => 0,
        BoundExpr::Succ(a) => oracle(a, env)?.checked_add(1)?,
        BoundExpr::Add(a, c) => oracle(a, env)?.checked_add(oracle(c, env)?)?,
        BoundExpr::Mul(a, c) => oracle(a, env)?.checked_mul(oracle(c, env)?)?,
        BoundExpr::Len(a) => 128 - u128::from(oracle(a, env)?.leading_zeros()),
        BoundExpr::Exp2(a) => 1u128.checked_shl(u32::try_from(oracle(a, env)?).ok()?)?,
    })
}

fn random_bound(r: &mut ChaCha8Rng, depth: u32) -> BoundExpr {
    let leaf = depth == 0 || r.gen_bool(0.3);
    if leaf {
        return match r.gen_range(0..3) {
            0 => BoundExpr::Zero,
            1 => BoundExpr::var("x"),
            _ => BoundExpr::var("y"),
        };
    }
    let a = random_bound(r, depth - 1);
    match r.gen_range(0..5) {
        0 => BoundExpr::succ(a),
        1 => BoundExpr::add(a, random_bound(r, depth - 1)),
        2 => BoundExpr::mul(a, random_bound(r, depth - 1)),
        3 => BoundExpr::len(a),
        _ => BoundExpr::exp2(BoundExpr::len(a)),
    }
}

#[test]
fn parsing_and_evaluation() {
    let env: BTreeMap<String, BigUint> = [("x".to_string(), big(37))].into();
    assert_eq!(b("x").eval(&env, 64).unwrap(), Some(big(37)));
    assert_eq!(b("|x|").eval(&env, 64).unwrap(), Some(big(6)));
    assert_eq!(b("x*|x|+3").eval(&env, 64).unwrap(), Some(big(37 * 6 + 3)));
    assert_eq!(b("2^|x|").eval(&env, 64).unwrap(), Some(big(64)));
    assert_eq!(b("|x|^2").eval(&env, 64).unwrap(), Some(big(36)));
    assert_eq!(b("x''").eval(&env, 64).unwrap(), Some(big(39)));
    assert_eq!(b("y").eval(&env, 64).unwrap(), None);
    assert!(b("2^x").eval_at(&big(1 << 20), 1 << 10).is_err());
    assert!(BoundExpr::parse("x +").is_err());
    assert!(BoundExpr::parse("|x").is_err());
}

#[test]
fn closures_decide_membership() {
    let log = standard_class("B1^1", 3).unwrap();
    let lin = standard_class("B3", 3).unwrap();
    let poly = standard_class("B5", 3).unwrap();
    let yes = |c, s: &str| match closure_contains(c, &b(s), 500) {
        Membership::Yes(d) => assert_eq!(d.replay(), b(s), "{s}"),
        other => panic!("{s}: {other:?}"),
    };
    yes(&log, "|x|");
    yes(&log, "|x| + |x| + 2");
    yes(&lin, "x + x + 1");
    yes(&poly, "x * x + x");
    yes(&lin, "y");
    let no = |c, s: &str| assert!(closure_contains(c, &b(s), 500).definitely_not(), "{s}");
    no(&log, "x");
    no(&lin, "x * x");
    no(&poly, "2^|x|");
    assert!(matches!(closure_contains(&poly, &b("x*x*x*x"), 2), Membership::NotFound { exhausted: true }));
}

#[test]
fn sampled_dominance() {
    let grid = default_grid();
    assert!(dominated(&b("|x|"), &b("x"), &grid).holds());
    assert!(dominated(&b("x + x"), &b("x * x + 2"), &grid).holds());
    assert!(!dominated(&b("x * x"), &b("x + 5"), &grid).holds());
}

#[test]
fn listed_triples() {
    let rows = dds_triples(3);
    assert_eq!(rows.len(), 26);
    assert_eq!(rows[0].label(), "(B3, B1^1, B5)");
}

#[test]
fn a_broken_triple_is_falsified() {
    let t = Triple::parse("B3,B1^1,linear{x}", 3).unwrap();
    let r = check_regularity(&t, &AuditConfig::default());
    assert!(r.dt[2].is_falsified(), "{}", r.render());
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn evaluation_matches_oracle(seed in any::<u64>(), x in 0u64..5000, y in 0u64..5000) {
        let e = random_bound(&mut rand::SeedableRng::seed_from_u64(seed), 4);
        let env: BTreeMap<String, BigUint> = [("x".to_string(), big(x)), ("y".to_string(), big(y))].into();
        let small: BTreeMap<String, u128> = [("x".to_string(), x as u128), ("y".to_string(), y as u128)].into();
        if let Some(want) = oracle(&e, &small) {
            prop_assert_eq!(e.eval(&env, 1 << 16).unwrap(), Some(BigUint::from(want)), "{}", e);
        }
    }

    #[test]
    fn rendering_round_trips(seed in any::<u64>()) {
        let e = random_bound(&mut rand::SeedableRng::seed_from_u64(seed), 4);
        prop_assert_eq!(BoundExpr::parse(&e.to_string()).unwrap(), e);
    }
}
