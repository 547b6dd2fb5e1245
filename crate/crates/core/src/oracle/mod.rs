//! Independent ground truth, sharing no code with the ladder machinery.

mod canonical;
pub mod diagonals;
pub mod lower_bound;
pub mod subgraph;
pub mod turan;

pub use diagonals::{diagonal_crossing, CrossingDirection, CrossingPath, DiagonalAssignment};
pub use lower_bound::{verify_lower_bound_construction, LowerBoundReport};
pub use subgraph::{contains_subgraph, SearchBudget};
pub use turan::{turan_number, TuranResult};
