//! The arithmetic theories: axioms, bounded formulas, the rules LC,
//! Induction and Comprehension, and theory proof checking.

pub mod axioms;
pub mod bounded;
pub mod params;
pub mod proof;
pub mod rules;

pub use axioms::{axiom_sentence, recognize_axiom, AxiomKind};
pub use bounded::{bounded_violation, is_bounded_formula};
pub use params::{ParamsError, Supplementary, TheoryParams};
pub use proof::{
    check_theory_proof, proves, Attachment, Cla11Line, Cla11Proof, Justification, TheoryCheckConfig, TheoryLineStatus,
    TheoryReport, TheoryVerdict,
};
pub use rules::{
    check_comprehension, check_induction, check_lc, comprehension_premise, comprehension_shape, induction_premises,
    induction_shape, ComprehensionData, InductionData, RuleCheck,
};
