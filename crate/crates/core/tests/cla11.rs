mod common;

use clarith::cla11::{
    axiom_sentence, check_comprehension, check_induction, check_theory_proof, proves, recognize_axiom, AxiomKind, Cla11Proof,
    TheoryCheckConfig, TheoryLineStatus, TheoryParams, TheoryVerdict,
};
use clarith::syntax::{parse_formula, Formula};
use proptest::prelude::*;
use proptest::sample::select;

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn corpus(name: &str) -> std::path::PathBuf {
    std::path::Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")).join(name)
}

fn params() -> TheoryParams {
    TheoryParams::standard("B3", "B3", "B5").unwrap()
}

/// Bounds in the time class of [`params`], written over lengths.
const TIME_BOUNDS: [&str; 4] = ["|u|", "|u| + |v|", "|u| * |v|", "|u| * |u| + |v|"];

/// Space-bounded induction formulas over `X`.
const SPACE_FORMULAS: [&str; 5] = [
    "X = X",
    "cex |z| <= |u| . z = u",
    "X <= X cor ~X <= X",
    "(cex |z| <= |u| + |v| . z = u + v) & X = X",
    "call |w| <= |u| . (w = X -> X = w)",
];

/// Amplitude bounds over lengths and elementary comprehension formulas over `y`.
const AMPLITUDE_BOUNDS: [&str; 3] = ["|s|", "|s| + |s|", "|s| + |t|"];
const COMPREHENDED: [&str; 4] = ["y = y", "y < |s|", "Bit(y, s)", "y + y = s"];

fn at(template: &str, t: &str) -> Formula {
    f(&template.replace('X', t))
}

#[test]
fn extended_two_line_proof() {
    let p = Cla11Proof::load(&corpus("numerals2.cla11")).unwrap().unwrap();
    let params = TheoryParams::from_toml(&std::fs::read_to_string(corpus("lin-log-poly.cfg")).unwrap()).unwrap();
    let r = check_theory_proof(&params, &p, &TheoryCheckConfig { extended: true, ..Default::default() });
    assert_eq!(r.verdict, TheoryVerdict::Accepted, "{r}");
    assert!(proves(&r, &f("cex z . z = 0''")));
    assert!(!proves(&r, &f("cex z . z = 0'")));
}

#[test]
fn theory_proofs_round_trip() {
    let p = Cla11Proof::load(&corpus("numerals2.cla11")).unwrap().unwrap();
    let cl12 = std::fs::read_to_string(corpus("numerals2.cl12")).unwrap();
    let back = Cla11Proof::parse_with(&p.render(), &mut |_| Ok(cl12.clone())).unwrap();
    assert_eq!(back, p);
}

#[test]
fn acceptance_is_per_line() {
    let src = "line 1: call x . cex y . y = x' ;; AX(Successor)\n\
               line 2: all x . x + 0 = x ;; AX\n\
               line 3: all x . x * 0 = 0' ;; AX\n";
    let p = Cla11Proof::parse(src).unwrap();
    let r = check_theory_proof(&params(), &p, &TheoryCheckConfig::default());
    assert_eq!(r.verdict, TheoryVerdict::Rejected { line: 3, reason: match &r.lines[2].1 {
        TheoryLineStatus::Rejected(why) => why.clone(),
        other => panic!("{other:?}"),
    } });
    assert!(matches!(r.lines[0].1, TheoryLineStatus::Ok(_)) && matches!(r.lines[1].1, TheoryLineStatus::Ok(_)));
    let head = Cla11Proof { lines: p.lines[..2].to_vec() };
    assert_eq!(check_theory_proof(&params(), &head, &TheoryCheckConfig::default()).verdict, TheoryVerdict::Accepted);
}

#[test]
fn citations_must_precede() {
    let src = "line 1: cex z . z = 0'' ;; LC(2)\nline 2: call x . cex y . y = x' ;; AX\n";
    let r = check_theory_proof(&params(), &Cla11Proof::parse(src).unwrap(), &TheoryCheckConfig::default());
    assert!(matches!(r.verdict, TheoryVerdict::Rejected { line: 1, .. }), "{r}");
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn plain_induction_weakens_to_reasonable(b in select(&TIME_BOUNDS[..]), template in select(&SPACE_FORMULAS[..])) {
        let p = params();
        let concl = f(&format!("x <= {b} -> {}", template.replace('X', "x")));
        let basis = at(template, "0");
        let plain = Formula::imp(at(template, "x"), at(template, "x'"));
        let (r, data) = check_induction(&concl, &basis, &plain, &p, false);
        prop_assert!(r.ok(), "{}", r);
        prop_assert!(data.is_some());
        let weak = Formula::imp(Formula::and(f(&format!("x < {b}")), at(template, "x")), at(template, "x'"));
        let (r, _) = check_induction(&concl, &basis, &weak, &p, true);
        prop_assert!(r.ok(), "{}", r);
        prop_assert!(!check_induction(&concl, &basis, &plain, &p, true).0.ok());
    }

    #[test]
    fn plain_comprehension_weakens_to_reasonable(b in select(&AMPLITUDE_BOUNDS[..]), q in select(&COMPREHENDED[..])) {
        let p = params();
        let concl = f(&format!("cex |x| <= {b} . all y < {b} . (Bit(y, x) <-> {q})"));
        let plain = f(&format!("{q} cor ~{q}"));
        prop_assert!(check_comprehension(&concl, &plain, &p, false).0.ok());
        let weak = f(&format!("y < {b} -> ({q} cor ~{q})"));
        prop_assert!(check_comprehension(&concl, &weak, &p, true).0.ok());
    }

    #[test]
    fn axioms_survive_renaming(a in select(&["a", "b", "w", "n"][..]), c in select(&["p", "q", "r", "m"][..])) {
        let sources = [
            ("Peano1", format!("all {a} . 0 != {a}'")),
            ("Peano2", format!("all {a} . all {c} . ({a}' = {c}' -> {a} = {c})")),
            ("Peano6", format!("all {a} . all {c} . {a} * {c}' = {a} * {c} + {a}")),
            ("Successor", format!("call {a} . cex {c} . {c} = {a}'")),
            ("Log", format!("call {a} . cex {c} . {c} = |{a}|")),
            ("Bit", format!("call {a} . call {c} . (Bit({c}, {a}) cor ~Bit({c}, {a}))")),
        ];
        for (name, src) in sources {
            prop_assert!(axiom_sentence(name).is_some());
            let kind = recognize_axiom(&f(&src), &[]).map(|k| k.name());
            prop_assert_eq!(kind.as_deref(), Some(name), "{}", src);
        }
        let ind = f(&format!("(0 + 0 = 0 & all {a} . (0 + {a} = {a} -> 0 + {a}' = {a}')) -> all {c} . 0 + {c} = {c}"));
        let is_induction = matches!(recognize_axiom(&ind, &[]), Some(AxiomKind::PeanoInduction { .. }));
        prop_assert!(is_induction);
    }
}
