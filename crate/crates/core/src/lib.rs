//! Exact evidential reasoning over finite frames.
//!
//! * [`structure`]: belief structures with exact rational masses and the
//!   Bel/Pl interval queries, including a zeta-transform Bel table.
//! * [`entailment`]: the "more specific than" ordering between structures,
//!   with independently checkable witnesses, plus coarsening and hedging.
//! * [`combination`]: Dempster's rule and the conflict-handling alternatives.
//! * [`monotonicity`]: whether aggregating new evidence keeps the old
//!   inferences, with a parameter sweep over the two-focal family.
//! * [`defaults`]: a small language for absolute and typical knowledge.
//! * [`cli`]: the command-line front end.

pub mod cli;
pub mod combination;
mod document;
pub mod defaults;
pub mod entailment;
pub mod error;
mod flow;
pub mod frame;
pub mod mass;
pub mod monotonicity;
pub mod structure;
mod zeta;

pub use combination::{combine, combine_all, conflict_mass, CombinationRule};
pub use defaults::{parse_kb, KnowledgeBase, Statement};
pub use entailment::{coarsening_entails, flow_entails, interval_contained, partition_entails, EntailmentWitness};
pub use error::{Error, Result};
pub use frame::{FocalSet, Frame};
pub use mass::Mass;
pub use monotonicity::{monotonic_step, pairwise_survey, MonotonicityReport};
pub use structure::{BeliefStructure, ProbabilityInterval};
