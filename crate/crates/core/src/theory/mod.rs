//! Closed-form symbols, iteration matrices, bound constants and lemma checks.

pub mod bounds;
pub mod dn;
pub mod hyper;
pub mod lemmas;
pub mod nn;
pub mod symbols;

pub use bounds::{nn_bounds, BoundGeometry, BoundSet, BoundStatus};
pub use dn::{dn_contraction_bound, dn_iteration_matrix, DNMatrix, DnBound};
pub use lemmas::{lemma_checks, LemmaChecks, LemmaReport};
pub use nn::{closed_form_matrix, closed_form_row, nn_iteration_matrix, scalar_trace_map, FormulaReading, NNMatrix};
pub use symbols::{symbols, symbols_mode, symbols_shifted, SymbolSet};
