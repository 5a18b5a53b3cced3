//! Proof objects and the line-oriented proof file format.

use std::fmt;

use num_bigint::BigUint;

use super::sequent::{parse_sequent, Sequent};
use crate::syntax::parser::Parser;
use crate::syntax::term::{from_binary, to_binary};
use crate::syntax::SyntaxError;

/// Which formula of a sequent a rule acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Succedent,
    Antecedent(usize),
}

/// A formula of the sequent plus a path of component indices inside it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Target {
    pub side: Side,
    pub path: Vec<u8>,
}

impl Target {
    pub fn succedent() -> Target {
        Target { side: Side::Succedent, path: Vec::new() }
    }

    pub fn antecedent(i: usize) -> Target {
        Target { side: Side::Antecedent(i), path: Vec::new() }
    }

    pub fn parse(s: &str) -> Option<Target> {
        let mut parts = s.split('.');
        let side = match parts.next()? {
            "S" => Side::Succedent,
            a => Side::Antecedent(a.strip_prefix('A')?.parse().ok()?),
        };
        let path = parts
            .map(|p| match p {
                "0" => Some(0),
                "1" => Some(1),
                _ => None,
            })
            .collect::<Option<Vec<u8>>>()?;
        Some(Target { side, path })
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Succedent => f.write_str("S")?,
            Side::Antecedent(i) => write!(f, "A{i}")?,
        }
        for c in &self.path {
            write!(f, ".{c}")?;
        }
        Ok(())
    }
}

/// A component index for binary choices, or a term for choice quantifiers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Instance {
    /// `0` or `1`; for a quantifier it denotes that constant.
    Index(u8),
    Var(String),
    Const(BigUint),
}

impl Instance {
    pub fn parse(s: &str) -> Option<Instance> {
        match s {
            "0" => return Some(Instance::Index(0)),
            "1" => return Some(Instance::Index(1)),
            _ => {}
        }
        if let Some(bits) = s.strip_prefix('#') {
            return from_binary(bits).map(Instance::Const);
        }
        let ok = s.starts_with(|c: char| c.is_ascii_alphabetic())
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            && !crate::syntax::parser::is_keyword(s);
        ok.then(|| Instance::Var(s.to_string()))
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instance::Index(i) => write!(f, "{i}"),
            Instance::Var(x) => f.write_str(x),
            Instance::Const(c) => write!(f, "#{}", to_binary(c)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Wait(Vec<usize>),
    /// ⊓-Choose: resolves a machine-owned ⊓ or ⊓x occurrence in an antecedent.
    MeetChoose { premise: usize, target: Target, instance: Instance },
    /// ⊔-Choose: resolves a machine-owned ⊔ or ⊔x occurrence.
    JoinChoose { premise: usize, target: Target, instance: Instance },
    Replicate { premise: usize, index: usize },
}

impl Rule {
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Rule::Wait(ps) => ps.clone(),
            Rule::MeetChoose { premise, .. } | Rule::JoinChoose { premise, .. } | Rule::Replicate { premise, .. } => {
                vec![*premise]
            }
        }
    }

    pub fn parse(s: &str) -> Option<Rule> {
        let s = s.trim();
        let open = s.find('(')?;
        let name = s[..open].trim();
        let inner = s[open + 1..].strip_suffix(')')?;
        let args: Vec<&str> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(str::trim).collect()
        };
        let num = |a: &str| a.parse::<usize>().ok();
        match (name, args.as_slice()) {
            ("Wait", ps) => ps.iter().map(|p| num(p)).collect::<Option<Vec<_>>>().map(Rule::Wait),
            ("MeetChoose", [p, t, i]) => Some(Rule::MeetChoose {
                premise: num(p)?,
                target: Target::parse(t)?,
                instance: Instance::parse(i)?,
            }),
            ("JoinChoose", [p, t, i]) => Some(Rule::JoinChoose {
                premise: num(p)?,
                target: Target::parse(t)?,
                instance: Instance::parse(i)?,
            }),
            ("Replicate", [p, i]) => Some(Rule::Replicate { premise: num(p)?, index: num(i)? }),
            _ => None,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Wait(ps) => {
                let ps: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "Wait({})", ps.join(", "))
            }
            Rule::MeetChoose { premise, target, instance } => write!(f, "MeetChoose({premise}, {target}, {instance})"),
            Rule::JoinChoose { premise, target, instance } => write!(f, "JoinChoose({premise}, {target}, {instance})"),
            Rule::Replicate { premise, index } => write!(f, "Replicate({premise}, {index})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub sequent: Sequent,
    pub rule: Rule,
}

impl fmt::Display for ProofLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {} ;; {}", self.number, self.sequent, self.rule)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Cl12Proof {
    pub lines: Vec<ProofLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ProofParseError {
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("line {line}: {err}")]
    Syntax { line: usize, err: SyntaxError },
}

impl ProofParseError {
    pub fn line(&self) -> usize {
        match self {
            ProofParseError::Format { line, .. } | ProofParseError::Syntax { line, .. } => *line,
        }
    }
}

/// Splits `line <n>: <body> ;; <just>` into its parts.
pub fn split_line(text: &str, lineno: usize) -> Result<(usize, &str, &str), ProofParseError> {
    let fmt_err = |msg: &str| ProofParseError::Format { line: lineno, msg: msg.to_string() };
    let rest = text.trim().strip_prefix("line").ok_or_else(|| fmt_err("expected 'line <n>:'"))?;
    let (num, rest) = rest.split_once(':').ok_or_else(|| fmt_err("expected ':' after the line number"))?;
    let number = num.trim().parse::<usize>().map_err(|_| fmt_err("bad line number"))?;
    let (body, just) = rest.rsplit_once(";;").ok_or_else(|| fmt_err("expected ';;' before the justification"))?;
    Ok((number, body.trim(), just.trim()))
}

/// Lines that carry content: comments (`%` or `//`) and blanks are skipped.
pub fn content_lines(src: &str) -> impl Iterator<Item = (usize, &str)> {
    src.lines().enumerate().filter_map(|(i, l)| {
        let t = l.trim();
        (!t.is_empty() && !t.starts_with('%') && !t.starts_with("//")).then_some((i + 1, t))
    })
}

impl Cl12Proof {
    pub fn parse(src: &str) -> Result<Cl12Proof, ProofParseError> {
        let mut lines = Vec::new();
        for (lineno, text) in content_lines(src) {
            let (number, body, just) = split_line(text, lineno)?;
            let mut p = Parser::new(body).map_err(|err| ProofParseError::Syntax { line: lineno, err })?;
            let sequent = parse_sequent(&mut p).map_err(|err| ProofParseError::Syntax { line: lineno, err })?;
            if !p.at_end() {
                let err = p.error::<()>("unexpected trailing input").unwrap_err();
                return Err(ProofParseError::Syntax { line: lineno, err });
            }
            let rule = Rule::parse(just)
                .ok_or_else(|| ProofParseError::Format { line: lineno, msg: format!("malformed rule `{just}`") })?;
            lines.push(ProofLine { number, sequent, rule });
        }
        Ok(Cl12Proof { lines })
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|l| format!("{l}\n")).collect()
    }

    pub fn conclusion(&self) -> Option<&Sequent> {
        self.lines.last().map(|l| &l.sequent)
    }

    pub fn position_of(&self, number: usize) -> Option<usize> {
        self.lines.iter().position(|l| l.number == number)
    }
}
