mod common;

use clarith::cl12::stability::formula_stability;
use clarith::cl12::{check_proof, stability, CheckConfig, Cl12Proof, ProofVerdict, Sequent, Stability, StabilityBudget};
use clarith::syntax::parse_formula;

fn check(src: &str) -> ProofVerdict {
    check_proof(&Cl12Proof::parse(src).unwrap(), &CheckConfig::default()).verdict
}

fn stable(s: &str) -> Stability {
    stability(&Sequent::parse(s).unwrap(), &StabilityBudget::default())
}

#[test]
fn numerals_proof_is_accepted() {
    let p = Cl12Proof::parse(common::NUMERALS2).unwrap();
    let r = check_proof(&p, &CheckConfig::default());
    assert_eq!(r.verdict, ProofVerdict::Accepted);
    assert_eq!(r.proves.unwrap().to_string(), "call x . cex y . y = x' |o- cex z . z = 0''");
}

#[test]
fn every_mutation_is_rejected() {
    for m in common::MUTATIONS {
        let src = common::mutate(common::NUMERALS2, m);
        let p = Cl12Proof::parse(&src).unwrap_or_else(|e| panic!("{m:?} does not parse: {e}"));
        let r = check_proof(&p, &CheckConfig::default());
        assert!(matches!(r.verdict, ProofVerdict::Rejected { .. }), "{m:?} accepted");
    }
}

#[test]
fn stability_of_elementarizations() {
    assert_eq!(stable("y1 = 0', y2 = y1' |o- y2 = 0''"), Stability::Valid);
    assert!(matches!(stable("y1 = 0' |o- y1 = 0''"), Stability::Invalid(_)));
    assert_eq!(stable("|o- call x . x = x"), Stability::Valid);
    assert!(matches!(stable("|o- cex x . x = x"), Stability::Invalid(_)));
    assert_eq!(stable("cex x . x = 0 |o- 0 = 0"), Stability::Valid);
}

#[test]
fn tableau_handles_quantifiers_and_equality() {
    let b = StabilityBudget::default();
    let f = |s: &str| parse_formula(s).unwrap();
    assert_eq!(formula_stability(&f("(all x . x + 0 = x) -> u + 0 = u"), &b), Stability::Valid);
    assert_eq!(formula_stability(&f("a = b & b = c -> c' = a'"), &b), Stability::Valid);
    assert!(matches!(formula_stability(&f("a = b -> a = c"), &b), Stability::Invalid(_)));
}

#[test]
fn wait_needs_every_environment_move() {
    let src = "line 1: |o- 0 = 0 ;; Wait()\nline 2: |o- 0 = 0 cand 0' = 0' ;; Wait(1)\n";
    assert!(matches!(check(src), ProofVerdict::Rejected { line: 2, .. }));
    let src = "line 1: |o- 0 = 0 ;; Wait()\nline 2: |o- 0' = 0' ;; Wait()\nline 3: |o- 0 = 0 cand 0' = 0' ;; Wait(1, 2)\n";
    assert_eq!(check(src), ProofVerdict::Accepted);
}

#[test]
fn premises_must_precede() {
    let src = "line 1: |o- cex z . z = 0 ;; JoinChoose(2, S, 0)\nline 2: |o- 0 = 0 ;; Wait()\n";
    assert!(matches!(check(src), ProofVerdict::Rejected { line: 1, .. }));
}

#[test]
fn replicate_copies_an_antecedent() {
    let src = "line 1: 0 = 0, 0 = 0 |o- 0 = 0 ;; Wait()\nline 2: 0 = 0 |o- 0 = 0 ;; Replicate(1, 0)\n";
    assert_eq!(check(src), ProofVerdict::Accepted);
    let src = "line 1: 0 = 0, 0' = 0' |o- 0 = 0 ;; Wait()\nline 2: 0 = 0 |o- 0 = 0 ;; Replicate(1, 0)\n";
    assert!(matches!(check(src), ProofVerdict::Rejected { .. }));
}

#[test]
fn proofs_round_trip() {
    for entry in std::fs::read_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "cl12") {
            let p = Cl12Proof::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
            assert_eq!(Cl12Proof::parse(&p.render()).unwrap(), p, "{}", path.display());
            assert_eq!(check_proof(&p, &CheckConfig::default()).verdict, ProofVerdict::Accepted, "{}", path.display());
        }
    }
}

#[test]
fn malformed_lines_report_their_line() {
    let e = Cl12Proof::parse("% header\nline 1: |o- 0 = 0 ;; Wait(\n").unwrap_err();
    assert_eq!(e.line(), 2);
    let e = Cl12Proof::parse("line 1: |o- 0 = ;; Wait()\n").unwrap_err();
    assert_eq!(e.line(), 1);
}
