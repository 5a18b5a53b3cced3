//! Bounds, boundclasses and their closures, sampled dominance, and
//! regularity audits of boundclass triples.

pub mod class;
pub mod dominance;
pub mod expr;
pub mod regularity;

pub use class::{closure_contains, describe, standard_class, standard_classes, Boundclass, Candidate, ClosureMode, Derivation, Membership, DEFAULT_INDEX};
pub use dominance::{default_grid, dominated, Dominance};
pub use expr::{is_variation, syntactic_variation_eq, BlowUp, BoundExpr};
pub use regularity::{check_regularity, dds_table, dds_triples, AuditConfig, Auditor, CondStatus, DdsTable, RegularityReport, SupplementaryEntry, Triple, Witness};
