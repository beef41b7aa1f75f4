//! Deduction engine for implication tables between mathematical properties.
//!
//! A [`KnowledgeBase`] holds a catalog of properties (selection principles such
//! as `S1(Ω,T)`), asserted implications and non-implications, and a finite list
//! of consistent cardinal configurations. From it the engine builds an
//! [`ImplicationTable`] over `{1, 0, ?}` and closes it under reflexivity,
//! transitivity and contrapositive propagation (optionally also under
//! separation by critical cardinalities).
//!
//! On top of closure sit the analysis tools: enumerating unsettled entries,
//! asserting hypothetical answers and measuring how many other entries they
//! settle, and ranking open problems by that impact.
//!
//! ```
//! use implify::{analysis, dataset, Hypothesis, TruthValue};
//!
//! let kb = dataset::spm2003();
//! let table = dataset::golden_table();
//! assert_eq!(analysis::count_open(&table), 76);
//!
//! let h = Hypothesis::new(12, 5, TruthValue::Implies).unwrap();
//! let result = analysis::what_if(&kb, &table, h).unwrap();
//! assert_eq!(result.open_after(), Some(33));
//! ```

pub mod analysis;
pub mod api;
pub mod cardinals;
pub mod catalog;
pub mod cli;
pub mod dataset;
pub mod deduction;
pub mod explain;
pub mod format;
pub mod server;
pub mod table;

pub use analysis::{Hypothesis, RankingEntry, WhatIfResult, WhatIfStatus};
pub use cardinals::{CardinalExpr, CardinalModel, ProvableOrder, Violation};
pub use catalog::{CoverClass, Fact, FactKind, KnowledgeBase, Property, PropertyId, Selector};
pub use deduction::{close, is_closed, Closer, DeductionError};
pub use explain::{Conflict, DerivationTrace, Rule, Step};
pub use table::{initial_table, Entry, ImplicationTable, TruthValue};

#[cfg(test)]
mod testutil;
