//! Polynomial algorithms for the implemented tractable triangle classes,
//! the matching primitives they rely on, and a dispatcher.

use thiserror::Error;

use crate::cost::{Cost, CostError};
use crate::model::ModelError;
use crate::triangles::{ClassifyError, Triangle};

pub mod consistency;
pub mod dispatch;
pub mod matching;
pub mod solvers;

pub use consistency::{arc_consistency, singleton_arc_consistency, Domains};
pub use dispatch::{dispatch, DispatchOptions, DispatchOutcome, SchemeReport, DEFAULT_ORACLE_BUDGET, PREFERENCE};
pub use matching::{max_cardinality_matching, max_weight_matching, Matching, MatchingGraph};
pub use solvers::{
    solve_lr_class, solve_matching_cardinality_class, solve_min0_class, solve_sac_class, solve_small_domain,
    solve_trivial_class, solve_weighted_matching_class,
};

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("binary cost c_{i}{j}({a},{b}) = {cost} is not crisp (0 or inf)")]
    NotCrisp { i: usize, j: usize, a: usize, b: usize, cost: Cost },
    #[error("{solver}: instance is outside the solver's class: {detail}")]
    ProfileViolation { solver: &'static str, detail: String, witness: Option<Triangle> },
    #[error("{solver}: internal check failed: {detail}")]
    Invariant { solver: &'static str, detail: String },
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Graph(#[from] matching::GraphError),
}

/// Options shared by the class solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverOptions {
    /// Re-derive the triangle profile and reject out-of-class inputs.
    pub check_profile: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions { check_profile: true }
    }
}
