//! Acceptance harness: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clarith::arena::{eval_elementary, run_match, EvalConfig, MatchConfig, MatchOutcome, Meter, Truth, Verdict};
use clarith::bounds::{check_regularity, dds_table, AuditConfig, Triple};
use clarith::cl12::{check_proof, CheckConfig, Cl12Proof, ProofVerdict};
use clarith::cla11::{check_theory_proof, Cla11Proof, TheoryCheckConfig, TheoryParams, TheoryVerdict};
use clarith::strategies::serial::{add, borrow_trace, compare, monus, mult};
use clarith::strategies::{add_agent, canonical_bundle, extract_agent, tri_agent, Op, RandomEnv, ScriptEnv, SilentEnv};
use clarith::syntax::term::{bit_len, to_binary};
use clarith::syntax::{developments, parse_formula, prefixation, Formula, Fresh, Labmove, Player, QuantKind, Term};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::Rng;

type Check = Result<String, String>;

fn corpus(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn bin(s: &str) -> BigUint {
    BigUint::parse_bytes(s.as_bytes(), 2).expect("binary literal")
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn prefixation_example() -> Check {
    let (e, g, h) = ("0 = 0", "x' = x", "x = 0");
    let game = f(&format!("{e} & call x . ({g} cor {h})"));
    let pos = [Labmove::bottom("1.#101"), Labmove::top("1.0")];
    let got = prefixation(&pos, &game).map_err(|e| e.to_string())?;
    let five = Term::constant(BigUint::from(5u32));
    let want = Formula::and(Formula::eq(Term::Zero, Term::Zero), Formula::eq(Term::succ(five.clone()), five));
    ensure(got == want, || format!("got {got}, want {want}"))?;
    Ok(format!("{got}"))
}

fn numerals_proof() -> Check {
    let p = Cl12Proof::parse(common::NUMERALS2).map_err(|e| e.to_string())?;
    let r = check_proof(&p, &CheckConfig::default());
    ensure(r.verdict == ProofVerdict::Accepted, || format!("verdict {:?}", r.verdict))?;
    for (k, m) in common::MUTATIONS.iter().enumerate() {
        let src = common::mutate(common::NUMERALS2, *m);
        let rejected = match Cl12Proof::parse(&src) {
            Err(_) => true,
            Ok(q) => !check_proof(&q, &CheckConfig::default()).accepted(),
        };
        ensure(rejected, || format!("mutation {} ({} -> {}) accepted", k + 1, m.1, m.2))?;
    }
    Ok(format!("7 lines accepted, 0 obligations, {}/12 mutations rejected", common::MUTATIONS.len()))
}

fn theory_proof() -> Check {
    let p = Cla11Proof::load(&corpus("numerals2.cla11")).map_err(|e| e.to_string())?.map_err(|e| e.to_string())?;
    let params = TheoryParams::standard("B3", "B1^1", "B5").map_err(|e| e.to_string())?;
    let r = check_theory_proof(&params, &p, &TheoryCheckConfig { extended: true, ..Default::default() });
    ensure(r.verdict == TheoryVerdict::Accepted, || format!("{r}"))?;
    Ok(format!("{} lines accepted in extended mode", p.lines.len()))
}

fn last_top_move(o: &MatchOutcome) -> Option<&str> {
    o.transcript.iter().rev().find(|l| l.player == Player::Top).map(|l| l.mv.as_str())
}

fn extracted_agent() -> Check {
    let proof = Cl12Proof::parse(common::NUMERALS2).map_err(|e| e.to_string())?;
    let concl = proof.conclusion().ok_or("empty proof")?.clone();
    let game = f("cex z . z = 0''");
    let agent = || -> Result<_, String> { extract_agent(&proof, canonical_bundle(&concl)?, &CheckConfig::default()) };
    let judge = |o: &MatchOutcome, who: &str| -> Result<(), String> {
        ensure(o.verdict == Verdict::TopWon && last_top_move(o) == Some("#10"), || format!("{who}: {}", o.render()))
    };
    let mut a = agent()?;
    judge(&run_match(&mut a, &mut SilentEnv, &game, &MatchConfig::default()).map_err(|e| e.to_string())?, "silent")?;
    for seed in 1..=100 {
        let mut a = agent()?;
        let o = run_match(&mut a, &mut RandomEnv::new(seed), &game, &MatchConfig::default()).map_err(|e| e.to_string())?;
        judge(&o, &format!("random:{seed}"))?;
    }
    Ok("101/101 won with final move #10".into())
}

fn arithmetic() -> Check {
    let mut m = Meter::default();
    let sum = add(&bin("10101"), &bin("1101"), &mut m);
    ensure(sum == bin("100010"), || format!("10101 + 1101 = {}", to_binary(&sum)))?;
    let prod = mult(&bin("11011"), &bin("101"), &mut m);
    ensure(prod == bin("10000111"), || format!("11011 * 101 = {}", to_binary(&prod)))?;
    let borrows = borrow_trace(&bin("110"), &bin("101"));
    ensure(borrows == [true, false, false], || format!("borrows {borrows:?}"))?;
    let mut env = ScriptEnv::new(vec!["#111".into(), "#100".into()]);
    let o = run_match(&mut tri_agent(), &mut env, &Op::Tri.game(), &MatchConfig::default()).map_err(|e| e.to_string())?;
    let own: Vec<&str> = o.transcript.iter().filter(|l| l.player == Player::Top).map(|l| l.mv.as_str()).collect();
    ensure(own == ["1", "1"] && o.verdict == Verdict::TopWon, || format!("trichotomy moves {own:?}, {}", o.verdict))?;
    let mut r = common::rng(5);
    for _ in 0..1000 {
        let (u, v): (u64, u64) = (r.gen(), r.gen());
        let (bu, bv) = (BigUint::from(u), BigUint::from(v));
        let ok = add(&bu, &bv, &mut m) == &bu + &bv
            && mult(&bu, &bv, &mut m) == &bu * &bv
            && monus(&bu, &bv, &mut m) == BigUint::from(u.saturating_sub(v))
            && compare(&bu, &bv, &mut m) == u.cmp(&v);
        ensure(ok, || format!("oracle disagreement on ({u}, {v})"))?;
    }
    Ok("worked values exact, 1000/1000 random pairs agree".into())
}

fn metering() -> Check {
    let mut r = common::rng(6);
    let game = Op::Add.game();
    let runs = 1000;
    for _ in 0..runs {
        let (u, v) = (common::big(&mut r, 64), common::big(&mut r, 64));
        let mut env = ScriptEnv::new(vec![format!("#{}", to_binary(&u)), format!("#{}", to_binary(&v))]);
        let o = run_match(&mut add_agent(), &mut env, &game, &MatchConfig::default()).map_err(|e| e.to_string())?;
        let n = bit_len(&u) + bit_len(&v);
        ensure(o.verdict == Verdict::TopWon, || format!("lost on ({u}, {v})"))?;
        ensure(o.meter.space_peak <= 64 * n + 64, || format!("space {} on ({u}, {v})", o.meter.space_peak))?;
        ensure(o.meter.amplitude <= n, || format!("amplitude {} on ({u}, {v})", o.meter.amplitude))?;
    }
    Ok(format!("{runs} matches, 0 violations"))
}

fn regularity() -> Check {
    let cfg = AuditConfig::default();
    let table = dds_table(&cfg);
    if let Some(row) = table.rows.iter().find(|r| !r.falsified().is_empty()) {
        return Err(row.render());
    }
    let broken = Triple::parse("B3,B1^1,linear{x}", cfg.index)?;
    let r = check_regularity(&broken, &cfg);
    ensure(r.dt[2].is_falsified(), || r.render())?;
    Ok(format!("{} listed triples, none falsified; broken triple dt3 falsified", table.rows.len()))
}

fn critical_formulas() -> Check {
    let mut r = common::rng(8);
    let cfg = EvalConfig::default();
    for k in 0..200 {
        let c = common::critical(&mut r, 3);
        ensure(c.is_critical(), || format!("generated non-critical {c}"))?;
        let e = c.elementarize().close(QuantKind::Exists);
        let t = eval_elementary(&e, &cfg);
        ensure(t == Truth::False, || format!("formula {k}: {c} gives {t:?}"))?;
    }
    Ok("200/200 false".into())
}

fn coherence() -> Check {
    let mut r = common::rng(9);
    let (mut pairs, mut agree) = (0, 0);
    while pairs < 300 {
        let g = common::game(&mut r, 3);
        let player = if r.gen_bool(0.5) { Player::Top } else { Player::Bottom };
        let fresh = Fresh::Const(common::big(&mut r, 8));
        let devs = developments(&g, player, &fresh);
        let Some((path, dev)) = devs.choose(&mut r) else { continue };
        pairs += 1;
        let lm = Labmove::new(player, path.render());
        if prefixation(&[lm], &g).as_ref() == Ok(dev) {
            agree += 1;
        }
    }
    ensure(agree == pairs, || format!("{agree}/{pairs} agree"))?;
    Ok(format!("{agree}/{pairs} agree"))
}

const JUSTIFICATIONS: [&str; 8] =
    ["AX", "AX(Log)", "TRUE", "TRUE(trusted)", "LC(1)", "LC(1,2)", "IND(1,2; reasonable)", "COMP(1)"];

fn random_cl12(r: &mut impl Rng) -> String {
    let mut s = String::new();
    for n in 1..=r.gen_range(1..6) {
        let ante: Vec<String> = (0..r.gen_range(0..3)).map(|_| common::formula(r, 2).to_string()).collect();
        let succ = common::formula(r, 3);
        let target = if r.gen_bool(0.5) { "S".to_string() } else { format!("A{}.1", r.gen_range(0..3)) };
        let instance = ["0", "1", "y1", "#101"].choose(r).expect("nonempty");
        let rule = match r.gen_range(0..4) {
            0 => format!("Wait({})", (1..n).map(|k| k.to_string()).collect::<Vec<_>>().join(", ")),
            1 => format!("MeetChoose({}, {target}, {instance})", n.max(2) - 1),
            2 => format!("JoinChoose({}, {target}, {instance})", n.max(2) - 1),
            _ => format!("Replicate({}, 0)", n.max(2) - 1),
        };
        s.push_str(&format!("line {n}: {} |o- {succ} ;; {rule}\n", ante.join(", ")));
    }
    s
}

fn random_cla11(r: &mut impl Rng) -> String {
    let mut s = String::new();
    for n in 1..=r.gen_range(1..6) {
        let j = JUSTIFICATIONS.choose(r).expect("nonempty");
        s.push_str(&format!("line {n}: {} ;; {j}\n", common::formula(r, 3)));
    }
    s
}

fn round_trips() -> Check {
    let mut r = common::rng(10);
    for k in 0..500 {
        let g = common::formula(&mut r, 4);
        let text = g.to_string();
        let back = parse_formula(&text).map_err(|e| format!("formula {k} `{text}`: {e}"))?;
        ensure(back == g, || format!("formula {k} `{text}` reparses as `{back}`"))?;
    }
    for k in 0..100 {
        let (first, second) = if k % 2 == 0 {
            let src = random_cl12(&mut r);
            let p = Cl12Proof::parse(&src).map_err(|e| format!("proof {k}: {e}\n{src}"))?;
            let q = Cl12Proof::parse(&p.render()).map_err(|e| format!("proof {k}: {e}"))?;
            ensure(p == q, || format!("proof {k} changed\n{src}"))?;
            (p.render(), q.render())
        } else {
            let src = random_cla11(&mut r);
            let p = Cla11Proof::parse(&src).map_err(|e| format!("proof {k}: {e}\n{src}"))?;
            let q = Cla11Proof::parse(&p.render()).map_err(|e| format!("proof {k}: {e}"))?;
            ensure(p == q, || format!("proof {k} changed\n{src}"))?;
            (p.render(), q.render())
        };
        ensure(first == second, || format!("proof {k} renders differently"))?;
    }
    let report = |seed: u64| -> Result<String, String> {
        let p = Cl12Proof::parse(common::NUMERALS2).map_err(|e| e.to_string())?;
        let concl = p.conclusion().ok_or("empty proof")?.clone();
        let mut a = extract_agent(&p, canonical_bundle(&concl)?, &CheckConfig::default())?;
        let o = run_match(&mut a, &mut RandomEnv::new(seed), &concl.succedent, &MatchConfig::default()).map_err(|e| e.to_string())?;
        let mut env = RandomEnv::new(seed);
        let add = run_match(&mut add_agent(), &mut env, &Op::Add.game(), &MatchConfig::default()).map_err(|e| e.to_string())?;
        let broken = Triple::parse("B3,B1^1,linear{x}", 3)?;
        Ok(format!(
            "{}{}{}{}",
            check_proof(&p, &CheckConfig::default()),
            o.render(),
            add.render(),
            check_regularity(&broken, &AuditConfig::default()).render()
        ))
    };
    for seed in [1, 2, 3] {
        ensure(report(seed)? == report(seed)?, || format!("reports differ under seed {seed}"))?;
    }
    Ok("500 formulas and 100 proofs round-trip; reports byte-stable".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Check); 10] = [
        ("prefixation example", Some(1), prefixation_example),
        ("numerals proof and mutations", Some(5), numerals_proof),
        ("two-line theory proof", Some(1), theory_proof),
        ("extracted agent wins", None, extracted_agent),
        ("arithmetic agents", Some(30), arithmetic),
        ("add metering", None, metering),
        ("regularity audit", Some(60), regularity),
        ("critical formulas", Some(10), critical_formulas),
        ("coherence", None, coherence),
        ("round trips", None, round_trips),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if took > Duration::from_secs(*s) => Err(format!("took {took:.2?}, limit {s}s")),
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({took:.2?})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why} ({took:.2?})", k + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
