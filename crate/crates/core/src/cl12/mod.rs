//! Sequents, the CL12 rules, stability and proof checking.

pub mod proof;
pub mod rules;
pub mod sequent;
pub mod stability;

pub use proof::{Cl12Proof, Instance, ProofLine, ProofParseError, Rule, Side, Target};
pub use rules::{
    check_choose, check_proof, check_replicate, check_wait, formula_at, resolve, wait_plan, CheckConfig, ChooseKind, LineStatus,
    ProofReport, ProofVerdict, WaitBranch,
};
pub use sequent::Sequent;
pub use stability::{stability, Stability, StabilityBudget};
