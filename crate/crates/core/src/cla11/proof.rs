//! Theory proofs: numbered sentences with axiom or rule justifications.
//!
//! ```text
//! line 1: call x . cex y . y = x' ;; AX(Successor)
//! line 2: cex z . z = 0'' ;; LC(1; proof=numerals2.cl12)
//! ```
//!
//! Justifications are `AX`, `AX(name)`, `TRUE`, `TRUE(trusted)`,
//! `LC(i,j,...)` with an optional `; proof=path` attachment,
//! `IND(basis, step)` and `COMP(premise)`, the last two optionally
//! followed by `; reasonable`.

use std::fmt;
use std::path::Path;

use super::axioms::{axiom_sentence, recognize_axiom};
use super::params::TheoryParams;
use super::rules::{check_comprehension, check_induction, check_lc, closure, RuleCheck};
use crate::arena::{eval_elementary, EvalConfig, Truth};
use crate::cl12::proof::{content_lines, split_line};
use crate::cl12::{CheckConfig, Cl12Proof, ProofParseError};
use crate::syntax::defs::alpha_eq;
use crate::syntax::{parse_formula, Formula};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attachment {
    pub path: String,
    /// The parsed CL12 proof, or why it could not be loaded.
    pub proof: Result<Cl12Proof, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(Option<String>),
    True { trusted: bool },
    Lc { premises: Vec<usize>, attachment: Option<Attachment> },
    Induction { basis: usize, step: usize, reasonable: bool },
    Comprehension { premise: usize, reasonable: bool },
}

impl Justification {
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Lc { premises, .. } => premises.clone(),
            Justification::Induction { basis, step, .. } => vec![*basis, *step],
            Justification::Comprehension { premise, .. } => vec![*premise],
            _ => Vec::new(),
        }
    }

    fn parse(s: &str) -> Option<(Justification, Option<String>)> {
        let s = s.trim();
        let (head, args) = match s.split_once('(') {
            Some((h, rest)) => (h.trim(), Some(rest.strip_suffix(')')?.trim())),
            None => (s, None),
        };
        let mut parts = args.unwrap_or("").split(';').map(str::trim);
        let first = parts.next().unwrap_or("");
        let options: Vec<&str> = parts.collect();
        let nums = |t: &str| -> Option<Vec<usize>> {
            if t.is_empty() {
                return Some(Vec::new());
            }
            t.split(',').map(|n| n.trim().parse().ok()).collect()
        };
        let reasonable = match options.as_slice() {
            [] => false,
            ["reasonable"] => true,
            _ if head != "LC" => return None,
            _ => false,
        };
        Some(match head {
            "AX" if options.is_empty() => {
                (Justification::Axiom((!first.is_empty()).then(|| first.to_string())), None)
            }
            "TRUE" if options.is_empty() => match first {
                "" => (Justification::True { trusted: false }, None),
                "trusted" => (Justification::True { trusted: true }, None),
                _ => return None,
            },
            "LC" => {
                let path = match options.as_slice() {
                    [] => None,
                    [opt] => Some(opt.strip_prefix("proof")?.trim_start().strip_prefix('=')?.trim().to_string()),
                    _ => return None,
                };
                (Justification::Lc { premises: nums(first)?, attachment: None }, path)
            }
            "IND" => match nums(first)?.as_slice() {
                [b, st] => (Justification::Induction { basis: *b, step: *st, reasonable }, None),
                _ => return None,
            },
            "COMP" => match nums(first)?.as_slice() {
                [p] => (Justification::Comprehension { premise: *p, reasonable }, None),
                _ => return None,
            },
            _ => return None,
        })
    }
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let tag = |r: bool| if r { "; reasonable" } else { "" };
        match self {
            Justification::Axiom(None) => f.write_str("AX"),
            Justification::Axiom(Some(n)) => write!(f, "AX({n})"),
            Justification::True { trusted: false } => f.write_str("TRUE"),
            Justification::True { trusted: true } => f.write_str("TRUE(trusted)"),
            Justification::Lc { premises, attachment: None } => write!(f, "LC({})", list(premises)),
            Justification::Lc { premises, attachment: Some(a) } => write!(f, "LC({}; proof={})", list(premises), a.path),
            Justification::Induction { basis, step, reasonable } => write!(f, "IND({basis},{step}{})", tag(*reasonable)),
            Justification::Comprehension { premise, reasonable } => write!(f, "COMP({premise}{})", tag(*reasonable)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cla11Line {
    pub number: usize,
    pub formula: Formula,
    pub just: Justification,
}

impl fmt::Display for Cla11Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {} ;; {}", self.number, self.formula, self.just)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cla11Proof {
    pub lines: Vec<Cla11Line>,
}

impl Cla11Proof {
    /// Parses without loading attachments; any `proof=` path is recorded
    /// as not loaded.
    pub fn parse(src: &str) -> Result<Cla11Proof, ProofParseError> {
        Cla11Proof::parse_with(src, &mut |_| Err("attachment not loaded".into()))
    }

    /// Parses, handing every attachment path to `load` for its source text.
    pub fn parse_with(
        src: &str,
        load: &mut dyn FnMut(&str) -> Result<String, String>,
    ) -> Result<Cla11Proof, ProofParseError> {
        let mut lines = Vec::new();
        for (lineno, text) in content_lines(src) {
            let (number, body, just) = split_line(text, lineno)?;
            let formula = parse_formula(body).map_err(|err| ProofParseError::Syntax { line: lineno, err })?;
            let (mut just, path) = Justification::parse(just).ok_or_else(|| ProofParseError::Format {
                line: lineno,
                msg: format!("malformed justification `{just}`"),
            })?;
            if let (Justification::Lc { attachment, .. }, Some(path)) = (&mut just, path) {
                let proof = load(&path).and_then(|s| Cl12Proof::parse(&s).map_err(|e| format!("{path}: {e}")));
                *attachment = Some(Attachment { path, proof });
            }
            lines.push(Cla11Line { number, formula, just });
        }
        Ok(Cla11Proof { lines })
    }

    /// Reads a proof file; attachments are resolved against its directory.
    pub fn load(path: &Path) -> std::io::Result<Result<Cla11Proof, ProofParseError>> {
        let src = std::fs::read_to_string(path)?;
        let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(Cla11Proof::parse_with(&src, &mut |p| std::fs::read_to_string(dir.join(p)).map_err(|e| format!("{p}: {e}"))))
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn position_of(&self, number: usize) -> Option<usize> {
        self.lines.iter().position(|l| l.number == number)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryLineStatus {
    Ok(String),
    /// Accepted on the strength of a `TRUE(trusted)` mark.
    Trusted(String),
    Obligation(String),
    Rejected(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TheoryVerdict {
    Accepted,
    AcceptedWithObligations(Vec<(usize, String)>),
    Rejected { line: usize, reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoryReport {
    pub lines: Vec<(usize, TheoryLineStatus)>,
    pub verdict: TheoryVerdict,
    /// Lines accepted only because they were marked trusted.
    pub trusted: Vec<usize>,
    /// The closure of the last line when the proof is accepted.
    pub proves: Option<Formula>,
}

impl TheoryReport {
    pub fn accepted(&self) -> bool {
        !matches!(self.verdict, TheoryVerdict::Rejected { .. })
    }

    /// Rejected because a search ran out, not because a condition failed.
    pub fn undecided(&self) -> bool {
        matches!(&self.verdict, TheoryVerdict::Rejected { reason, .. } if reason.contains("undecided"))
    }
}

#[derive(Clone, Debug)]
pub struct TheoryCheckConfig {
    /// Every LC line must carry a checked CL12 proof.
    pub extended: bool,
    pub cl12: CheckConfig,
    pub eval: EvalConfig,
}

impl Default for TheoryCheckConfig {
    fn default() -> Self {
        TheoryCheckConfig { extended: false, cl12: CheckConfig::default(), eval: EvalConfig::default() }
    }
}

fn from_rule(check: RuleCheck, ok: String) -> TheoryLineStatus {
    if !check.ok() {
        TheoryLineStatus::Rejected(check.violations.join("; "))
    } else if !check.obligations.is_empty() {
        TheoryLineStatus::Obligation(check.obligations.join("; "))
    } else {
        TheoryLineStatus::Ok(ok)
    }
}

fn check_line(
    params: &TheoryParams,
    proof: &Cla11Proof,
    idx: usize,
    cfg: &TheoryCheckConfig,
    supplementary: &[(String, Formula)],
) -> TheoryLineStatus {
    let line = &proof.lines[idx];
    let cited = |n: usize| -> Result<&Formula, String> {
        match proof.position_of(n) {
            Some(j) if j < idx => Ok(&proof.lines[j].formula),
            Some(_) => Err(format!("line {n} does not precede line {}", line.number)),
            None => Err(format!("no line {n}")),
        }
    };
    let premises: Result<Vec<&Formula>, String> = line.just.premises().into_iter().map(cited).collect();
    let premises = match premises {
        Ok(p) => p,
        Err(e) => return TheoryLineStatus::Rejected(e),
    };
    let sentence = closure(&line.formula);
    match &line.just {
        Justification::Axiom(name) => match recognize_axiom(&sentence, supplementary) {
            Some(kind) if name.as_ref().is_none_or(|n| *n == kind.name()) => TheoryLineStatus::Ok(format!("axiom {kind}")),
            Some(kind) => TheoryLineStatus::Rejected(format!("this is axiom {}, not {}", kind.name(), name.as_deref().unwrap_or(""))),
            None => match name.as_deref().and_then(axiom_sentence) {
                Some(a) => TheoryLineStatus::Rejected(format!("axiom {} reads `{a}`", name.as_deref().unwrap_or(""))),
                None => TheoryLineStatus::Rejected("not an axiom of the theory".into()),
            },
        },
        Justification::True { trusted } => {
            if !params.trusted_true {
                return TheoryLineStatus::Rejected("the theory does not admit true sentences as axioms".into());
            }
            if !line.formula.is_elementary() || !line.formula.is_sentence() {
                return TheoryLineStatus::Rejected("TRUE applies to elementary sentences only".into());
            }
            match eval_elementary(&line.formula, &cfg.eval) {
                Truth::True => TheoryLineStatus::Ok("true by evaluation".into()),
                Truth::False => TheoryLineStatus::Rejected("evaluates to false".into()),
                Truth::Unknown if *trusted => TheoryLineStatus::Trusted("evaluation inconclusive, trusted".into()),
                Truth::Unknown => TheoryLineStatus::Rejected(format!(
                    "truth undecided with blind bound {}; mark it TRUE(trusted) to accept",
                    cfg.eval.blind_bound
                )),
            }
        }
        Justification::Lc { attachment, .. } => match attachment {
            Some(Attachment { proof: Ok(p), path }) => from_rule(check_lc(&line.formula, &premises, p, &cfg.cl12), format!("LC via {path}")),
            Some(Attachment { proof: Err(e), .. }) => TheoryLineStatus::Rejected(format!("attached proof: {e}")),
            None if cfg.extended => TheoryLineStatus::Rejected("LC without an attached CL12 proof".into()),
            None => TheoryLineStatus::Obligation(format!(
                "CL12 provability of `{}` from the cited lines not checked",
                sentence
            )),
        },
        Justification::Induction { reasonable, .. } => {
            let (check, data) = check_induction(&line.formula, premises[0], premises[1], params, *reasonable);
            let ok = data.map(|d| format!("induction on {} up to {}", d.var, d.bound)).unwrap_or_default();
            from_rule(check, ok)
        }
        Justification::Comprehension { reasonable, .. } => {
            let (check, data) = check_comprehension(&line.formula, premises[0], params, *reasonable);
            let ok = data.map(|d| format!("comprehension of {} below {}", d.x, d.bound)).unwrap_or_default();
            from_rule(check, ok)
        }
    }
}

impl fmt::Display for TheoryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, st) in &self.lines {
            match st {
                TheoryLineStatus::Ok(d) => writeln!(f, "line {n}: ok ({d})")?,
                TheoryLineStatus::Trusted(d) => writeln!(f, "line {n}: trusted ({d})")?,
                TheoryLineStatus::Obligation(o) => writeln!(f, "line {n}: obligation: {o}")?,
                TheoryLineStatus::Rejected(r) => writeln!(f, "line {n}: rejected: {r}")?,
            }
        }
        match &self.verdict {
            TheoryVerdict::Accepted => writeln!(f, "verdict: accepted")?,
            TheoryVerdict::AcceptedWithObligations(o) => writeln!(f, "verdict: accepted-with-obligations ({})", o.len())?,
            TheoryVerdict::Rejected { line, reason } => writeln!(f, "verdict: rejected at line {line}: {reason}")?,
        }
        if let Some(p) = &self.proves {
            writeln!(f, "proves: {p}")?;
        }
        Ok(())
    }
}

/// Checks every line independently; the proof is accepted iff every line is.
pub fn check_theory_proof(params: &TheoryParams, proof: &Cla11Proof, cfg: &TheoryCheckConfig) -> TheoryReport {
    if proof.lines.is_empty() {
        return TheoryReport {
            lines: Vec::new(),
            verdict: TheoryVerdict::Rejected { line: 0, reason: "empty proof".into() },
            trusted: Vec::new(),
            proves: None,
        };
    }
    let supplementary = params.named_supplementary();
    let mut lines = Vec::new();
    let mut obligations = Vec::new();
    let mut trusted = Vec::new();
    let mut rejected = None;
    for (idx, line) in proof.lines.iter().enumerate() {
        let dup = proof.lines[..idx].iter().any(|l| l.number == line.number);
        let status = if dup {
            TheoryLineStatus::Rejected(format!("line number {} repeated", line.number))
        } else {
            check_line(params, proof, idx, cfg, &supplementary)
        };
        match &status {
            TheoryLineStatus::Rejected(r) if rejected.is_none() => rejected = Some((line.number, r.clone())),
            TheoryLineStatus::Obligation(o) => obligations.push((line.number, o.clone())),
            TheoryLineStatus::Trusted(_) => trusted.push(line.number),
            _ => {}
        }
        lines.push((line.number, status));
    }
    let verdict = match rejected {
        Some((line, reason)) => TheoryVerdict::Rejected { line, reason },
        None if obligations.is_empty() => TheoryVerdict::Accepted,
        None => TheoryVerdict::AcceptedWithObligations(obligations),
    };
    let proves = (!matches!(verdict, TheoryVerdict::Rejected { .. }))
        .then(|| closure(&proof.lines.last().expect("nonempty").formula));
    TheoryReport { lines, verdict, trusted, proves }
}

/// Whether `f` is (up to renaming) the sentence proved by `report`.
pub fn proves(report: &TheoryReport, f: &Formula) -> bool {
    report.proves.as_ref().is_some_and(|p| alpha_eq(p, &closure(f)))
}

#[cfg(test)]
mod tests {
    use super::*;

    const CL12: &str = include_str!("../../../../corpus/numerals2.cl12");
    const CLA11: &str = "line 1: call x . cex y . y = x' ;; AX(Successor)\nline 2: cex z . z = 0'' ;; LC(1; proof=numerals2.cl12)\n";

    fn params() -> TheoryParams {
        TheoryParams::standard("B3", "B1^1", "B5").unwrap()
    }

    fn with_attachment(src: &str) -> Cla11Proof {
        Cla11Proof::parse_with(src, &mut |_| Ok(CL12.to_string())).unwrap()
    }

    #[test]
    fn two_line_proof() {
        let p = with_attachment(CLA11);
        let cfg = TheoryCheckConfig { extended: true, ..Default::default() };
        let r = check_theory_proof(&params(), &p, &cfg);
        assert_eq!(r.verdict, TheoryVerdict::Accepted, "{:?}", r.lines);
        assert!(proves(&r, &parse_formula("cex w . w = 0''").unwrap()));
    }

    #[test]
    fn lc_without_attachment() {
        let p = Cla11Proof::parse("line 1: call x . cex y . y = x' ;; AX\nline 2: cex z . z = 0'' ;; LC(1)\n").unwrap();
        let r = check_theory_proof(&params(), &p, &TheoryCheckConfig::default());
        assert!(matches!(r.verdict, TheoryVerdict::AcceptedWithObligations(_)));
        let r = check_theory_proof(&params(), &p, &TheoryCheckConfig { extended: true, ..Default::default() });
        assert_eq!(r.verdict, TheoryVerdict::Rejected { line: 2, reason: "LC without an attached CL12 proof".into() });
    }

    #[test]
    fn wrong_conclusion_rejected() {
        let p = with_attachment(&CLA11.replace("0''", "0'''"));
        let r = check_theory_proof(&params(), &p, &TheoryCheckConfig { extended: true, ..Default::default() });
        assert!(matches!(r.verdict, TheoryVerdict::Rejected { line: 2, .. }));
    }

    #[test]
    fn trusted_truth() {
        let src = "line 1: all x . x + 0 = x ;; TRUE\nline 2: ex x . x * x = 0''''''''' ;; TRUE\n";
        let p = Cla11Proof::parse(src).unwrap();
        assert!(!check_theory_proof(&params(), &p, &TheoryCheckConfig::default()).accepted());
        let mut t = params();
        t.trusted_true = true;
        assert_eq!(check_theory_proof(&t, &p, &TheoryCheckConfig::default()).verdict, TheoryVerdict::Accepted);
        let bad = Cla11Proof::parse("line 1: 0 = 0' ;; TRUE(trusted)\n").unwrap();
        assert!(!check_theory_proof(&t, &bad, &TheoryCheckConfig::default()).accepted());
    }

    #[test]
    fn justifications_round_trip() {
        for j in ["AX", "AX(Log)", "TRUE", "TRUE(trusted)", "LC()", "LC(1,2)", "IND(1,2)", "IND(1,2; reasonable)", "COMP(3)", "COMP(3; reasonable)"] {
            let (parsed, _) = Justification::parse(j).unwrap();
            assert_eq!(parsed.to_string(), j);
        }
        assert!(Justification::parse("IND(1)").is_none());
        assert!(Justification::parse("COMP(1; proof=x)").is_none());
    }
}
