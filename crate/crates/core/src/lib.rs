//! Executable constructions around Turán numbers of grids `F_t = P_t □ P_t`
//! and tree-path products `T □ P_t`.
//!
//! The crate is organised bottom-up:
//!
//! - [`graph`], [`alpha`], [`io`]: graph substrate, exact densities, the
//!   canonical edge-list format.
//! - [`generators`]: paths, grids, Cartesian and tensor products, C4-free
//!   polarity graphs, blowups, seeded random graphs.
//! - [`cleaning`]: host-graph regularization and the deletion procedure that
//!   guarantees many high-codegree neighbours along every edge.
//! - [`ladders`]: `t`-ladders in tensor powers, goodness, dyadic harvesting and
//!   constrained-extension counting.
//! - [`embedder`]: the auxiliary path graph, peeling, and the greedy
//!   collision-bounded embedding of `T □ P_t`.
//! - [`oracle`]: independent ground truth (subgraph search, exact Turán
//!   numbers, the diagonal-crossing check and the blowup lower bound).
//! - [`cli`]: the `gridturan` command line.
//!
//! Runnable walkthroughs live in `examples/`.

pub mod alpha;
pub mod cleaning;
pub mod cli;
pub mod embedder;
pub mod error;
pub mod generators;
pub mod graph;
pub mod io;
pub mod ladders;
pub mod oracle;

pub use alpha::Alpha;
pub use error::{Error, Result};
pub use generators::{TensorMode, TensorPowerView, TensorVertex};
pub use graph::{DegreeStats, Graph, Subgraph, Vertex};
