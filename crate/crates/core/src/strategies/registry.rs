//! Agents and environments by name, for command-line use.

use std::path::Path;

use super::arith::{bound_eval_agent, numeral_agent, Op, OpAgent};
use super::env::{RandomEnv, ScriptEnv, SilentEnv};
use super::extract::{canonical_bundle, extract_agent};
use crate::arena::Agent;
use crate::bounds::BoundExpr;
use crate::cl12::{CheckConfig, Cl12Proof};

/// Names accepted by [`agent_from_spec`], for help text.
pub const AGENT_NAMES: &str =
    "add, sub, mult, tri, br0, br1, div2, bitsum, successor, log, bit, numeral:<n>, bound:<expr>, extract:<file.cl12>";

/// Builds an agent from `add`, `numeral:5`, `bound:|x|`, `extract:proof.cl12`, ...
pub fn agent_from_spec(spec: &str, cfg: &CheckConfig) -> Result<Box<dyn Agent>, String> {
    if let Some(op) = Op::from_name(spec) {
        return Ok(Box::new(OpAgent::new(op)));
    }
    let (kind, arg) = spec.split_once(':').ok_or_else(|| format!("unknown agent `{spec}`; known: {AGENT_NAMES}"))?;
    match kind {
        "numeral" => {
            let n: usize = arg.parse().map_err(|_| format!("bad numeral `{arg}`"))?;
            Ok(Box::new(numeral_agent(n)))
        }
        "bound" => Ok(Box::new(bound_eval_agent(BoundExpr::parse(arg)?))),
        "extract" => {
            let src = std::fs::read_to_string(arg).map_err(|e| format!("{arg}: {e}"))?;
            let proof = Cl12Proof::parse(&src).map_err(|e| format!("{arg}: {e}"))?;
            let concl = proof.conclusion().ok_or_else(|| format!("{arg}: empty proof"))?;
            let bundle = canonical_bundle(concl)?;
            Ok(Box::new(extract_agent(&proof, bundle, cfg)?.with_label(spec)))
        }
        _ => Err(format!("unknown agent `{spec}`; known: {AGENT_NAMES}")),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvSpec {
    Silent,
    Random(u64),
    Script(Vec<String>),
    /// Every environment with at most this many moves.
    Exhaustive(usize),
    Repl,
}

impl EnvSpec {
    /// `silent`, `random:<seed>`, `script:<file>`, `exhaustive:<k>` or `repl`.
    /// A bare `random` takes `default_seed`.
    pub fn parse(spec: &str, default_seed: u64) -> Result<EnvSpec, String> {
        let (kind, arg) = match spec.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (spec, None),
        };
        match (kind, arg) {
            ("silent", None) => Ok(EnvSpec::Silent),
            ("repl", None) => Ok(EnvSpec::Repl),
            ("random", None) => Ok(EnvSpec::Random(default_seed)),
            ("random", Some(s)) => s.parse().map(EnvSpec::Random).map_err(|_| format!("bad seed `{s}`")),
            ("exhaustive", Some(k)) => k.parse().map(EnvSpec::Exhaustive).map_err(|_| format!("bad depth `{k}`")),
            ("script", Some(f)) => {
                let src = std::fs::read_to_string(Path::new(f)).map_err(|e| format!("{f}: {e}"))?;
                ScriptEnv::parse(&src).map(|_| ()).map_err(|e| format!("{f}: {e}"))?;
                let moves = src
                    .lines()
                    .map(|l| l.split('%').next().unwrap_or("").trim().to_string())
                    .filter(|l| !l.is_empty())
                    .collect();
                Ok(EnvSpec::Script(moves))
            }
            _ => Err(format!("unknown environment `{spec}`; known: silent, random:<seed>, script:<file>, exhaustive:<k>, repl")),
        }
    }

    /// A single agent for this environment; exhaustive environments have none.
    pub fn agent(&self) -> Option<Box<dyn Agent>> {
        match self {
            EnvSpec::Silent => Some(Box::new(SilentEnv)),
            EnvSpec::Random(seed) => Some(Box::new(RandomEnv::new(*seed))),
            EnvSpec::Script(moves) => {
                let src = moves.join("\n");
                Some(Box::new(ScriptEnv::parse(&src).expect("validated when parsed")))
            }
            EnvSpec::Repl => Some(Box::new(super::env::ReplEnv::stdio())),
            EnvSpec::Exhaustive(_) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specs_resolve() {
        let cfg = CheckConfig::default();
        assert_eq!(agent_from_spec("add", &cfg).unwrap().name(), "add");
        assert_eq!(agent_from_spec("numeral:3", &cfg).unwrap().name(), "numeral:3");
        assert!(agent_from_spec("bound:|x|", &cfg).is_ok());
        assert!(agent_from_spec("bogus", &cfg).is_err());
        assert_eq!(EnvSpec::parse("random:7", 0).unwrap(), EnvSpec::Random(7));
        assert_eq!(EnvSpec::parse("random", 3).unwrap(), EnvSpec::Random(3));
        assert_eq!(EnvSpec::parse("exhaustive:2", 0).unwrap(), EnvSpec::Exhaustive(2));
        assert!(EnvSpec::parse("loud", 0).is_err());
    }
}
