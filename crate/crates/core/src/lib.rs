//! Valued constraint satisfaction toolkit: triangle-based tractability
//! classification of binary instances with solvers for the tractable
//! classes, and exact minimisation of cross-free convex count objectives
//! through minimum convex-cost flow.

pub mod binary;
pub mod cfc;
pub mod cli;
pub mod cost;
pub mod flow;
pub mod format;
pub mod model;
pub mod renaming;
pub mod solution;
pub mod testkit;
pub mod triangles;

pub use cost::Cost;
pub use format::Instance;
pub use model::{AssignmentSet, BinaryInstance, CountFunction, CountInstance, Variable};
pub use solution::SolveResult;
