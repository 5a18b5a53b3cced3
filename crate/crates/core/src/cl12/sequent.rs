use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::parser::Parser;
use crate::syntax::parser::Tok;
use crate::syntax::{Formula, SyntaxError};

/// `E1, ..., En |o- F`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Sequent {
        Sequent { antecedent, succedent }
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.antecedent.iter().chain(std::iter::once(&self.succedent))
    }

    /// Every variable occurring anywhere, free or bound.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.collect_all(&mut out);
        }
        out
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        self.formulas().flat_map(|f| f.free_vars()).collect()
    }

    pub fn bound_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for f in self.formulas() {
            f.walk(&mut |g| {
                if let Some((_, x, _)) = g.as_quant() {
                    out.insert(x.to_string());
                }
            });
        }
        out
    }

    /// The classical reading `(E1 & ... & En) -> F` of the elementarization.
    pub fn elementarization(&self) -> Formula {
        let succ = self.succedent.elementarize();
        let mut ante = self.antecedent.iter().map(|f| f.elementarize());
        match ante.next() {
            None => succ,
            Some(first) => Formula::imp(ante.fold(first, Formula::and), succ),
        }
    }

    pub fn parse(src: &str) -> Result<Sequent, SyntaxError> {
        let mut p = Parser::new(src)?;
        let s = parse_sequent(&mut p)?;
        if !p.at_end() {
            return p.error("unexpected trailing input");
        }
        Ok(s)
    }
}

pub fn parse_sequent(p: &mut Parser) -> Result<Sequent, SyntaxError> {
    let mut antecedent = Vec::new();
    if !p.eat(&Tok::Turnstile) {
        loop {
            antecedent.push(p.formula()?);
            if p.eat(&Tok::Comma) {
                continue;
            }
            p.expect(&Tok::Turnstile, "',' or '|o-'")?;
            break;
        }
    }
    let succedent = p.formula()?;
    Ok(Sequent { antecedent, succedent })
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ante: Vec<String> = self.antecedent.iter().map(|a| a.to_string()).collect();
        if ante.is_empty() {
            write!(f, "|o- {}", self.succedent)
        } else {
            write!(f, "{} |o- {}", ante.join(", "), self.succedent)
        }
    }
}
