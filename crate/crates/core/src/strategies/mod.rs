//! Interactive agents: axiom providers, bit-serial arithmetic, bound
//! evaluators, environments and strategies extracted from CL12 proofs.

pub mod arith;
pub mod env;
pub mod extract;
pub mod providers;
pub mod registry;
pub mod serial;

pub use arith::{
    add_agent, axiom_agent, bitsum_agent, bound_eval_agent, bound_game, br_agent, div2_agent, mult_agent,
    numeral_agent, numeral_agent_with, numeral_game, sub_agent, tri_agent, BoundEvalAgent, NumeralAgent, Op, OpAgent,
};
pub use env::{bottom_moves, exhaustive_matches, small_values, RandomEnv, ReplEnv, ScriptEnv, SilentEnv};
pub use extract::{canonical_bundle, canonical_provider, extract_agent, ExtractedAgent};
pub use providers::{Channel, ProviderBundle, DEFAULT_POLL_LIMIT};
pub use registry::{agent_from_spec, EnvSpec, AGENT_NAMES};
