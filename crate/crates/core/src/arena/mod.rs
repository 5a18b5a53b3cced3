//! Standard-model evaluation, adjudication and metered matches.

pub mod eval;
pub mod play;
pub mod poly;

pub use eval::{eval_elementary, eval_ext, eval_term, eval_with, EvalConfig, Evaluator, Truth};
pub use play::{adjudicate, run_match, Agent, AgentFault, Ctx, MatchConfig, MatchOutcome, Meter, Verdict};
