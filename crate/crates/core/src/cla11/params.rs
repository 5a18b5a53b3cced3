//! Theory parameters: the boundclass triple, supplementary axioms and the
//! trusted-truth switch, read from a TOML theory file.
//!
//! ```toml
//! amplitude = "B3"
//! space = "B1^1"
//! time = "B5"
//! trusted_true = false
//!
//! [[supplementary]]
//! name = "Double"
//! sentence = "call x . cex y . y = x + x"
//! strategy = "bound:x+x"
//! ```

use serde::Deserialize;

use crate::bounds::{check_regularity, AuditConfig, Boundclass, RegularityReport, SupplementaryEntry, Triple, DEFAULT_INDEX};
use crate::syntax::{parse_formula, Formula};

#[derive(Clone, Debug)]
pub struct Supplementary {
    pub name: String,
    pub sentence: Formula,
    /// Agent spec claimed to win the sentence.
    pub strategy: Option<String>,
}

#[derive(Clone, Debug)]
pub struct TheoryParams {
    pub triple: Triple,
    pub supplementary: Vec<Supplementary>,
    /// Admits `TRUE` lines, i.e. the theory's axioms include all true sentences.
    pub trusted_true: bool,
    /// Closure nodes per boundclass membership query.
    pub budget: usize,
    /// Filled in by [`TheoryParams::audit`].
    pub regularity: Option<RegularityReport>,
}

#[derive(Debug, thiserror::Error)]
pub enum ParamsError {
    #[error("theory file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("theory file: {0}")]
    Invalid(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    amplitude: String,
    space: String,
    time: String,
    #[serde(default)]
    trusted_true: bool,
    #[serde(default)]
    index: Option<usize>,
    #[serde(default)]
    budget: Option<usize>,
    #[serde(default)]
    supplementary: Vec<RawSupplementary>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSupplementary {
    name: String,
    sentence: String,
    #[serde(default)]
    strategy: Option<String>,
}

impl TheoryParams {
    pub fn new(triple: Triple) -> TheoryParams {
        TheoryParams { triple, supplementary: Vec::new(), trusted_true: false, budget: 500, regularity: None }
    }

    /// The empty theory over standard classes, e.g. `("B3", "B1^1", "B5")`.
    pub fn standard(amplitude: &str, space: &str, time: &str) -> Result<TheoryParams, ParamsError> {
        let class = |s: &str| Boundclass::parse(s, DEFAULT_INDEX).map_err(ParamsError::Invalid);
        Ok(TheoryParams::new(Triple { amplitude: class(amplitude)?, space: class(space)?, time: class(time)? }))
    }

    pub fn from_toml(src: &str) -> Result<TheoryParams, ParamsError> {
        let raw: RawParams = toml::from_str(src)?;
        let index = raw.index.unwrap_or(DEFAULT_INDEX);
        let class = |s: &str| Boundclass::parse(s, index).map_err(ParamsError::Invalid);
        let triple = Triple { amplitude: class(&raw.amplitude)?, space: class(&raw.space)?, time: class(&raw.time)? };
        let mut supplementary = Vec::new();
        for s in raw.supplementary {
            let sentence = parse_formula(&s.sentence)
                .map_err(|e| ParamsError::Invalid(format!("supplementary axiom {}: {e}", s.name)))?;
            if !sentence.is_sentence() {
                return Err(ParamsError::Invalid(format!("supplementary axiom {} has free variables", s.name)));
            }
            supplementary.push(Supplementary { name: s.name, sentence, strategy: s.strategy });
        }
        Ok(TheoryParams {
            triple,
            supplementary,
            trusted_true: raw.trusted_true,
            budget: raw.budget.unwrap_or(500),
            regularity: None,
        })
    }

    pub fn amplitude(&self) -> &Boundclass {
        &self.triple.amplitude
    }

    pub fn space(&self) -> &Boundclass {
        &self.triple.space
    }

    pub fn time(&self) -> &Boundclass {
        &self.triple.time
    }

    pub fn named_supplementary(&self) -> Vec<(String, Formula)> {
        self.supplementary.iter().map(|s| (s.name.clone(), s.sentence.clone())).collect()
    }

    /// Runs the regularity audit and keeps its report.
    pub fn audit(&mut self, cfg: &AuditConfig) -> &RegularityReport {
        let mut cfg = cfg.clone();
        cfg.supplementary = self
            .supplementary
            .iter()
            .map(|s| SupplementaryEntry { name: s.name.clone(), sentence: Some(s.sentence.clone()), strategy: s.strategy.clone() })
            .collect();
        self.regularity.insert(check_regularity(&self.triple, &cfg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_theory_file() {
        let src = "amplitude = \"B3\"\nspace = \"B1^1\"\ntime = \"B5\"\n\n[[supplementary]]\nname = \"Double\"\nsentence = \"call x . cex y . y = x + x\"\n";
        let p = TheoryParams::from_toml(src).unwrap();
        assert_eq!(p.triple.label(), "(B3, B1^1, B5)");
        assert_eq!(p.supplementary.len(), 1);
        assert!(!p.trusted_true);
        assert!(TheoryParams::from_toml("amplitude = \"B3\"").is_err());
        assert!(TheoryParams::from_toml("amplitude = \"B9\"\nspace = \"B3\"\ntime = \"B5\"").is_err());
    }
}
