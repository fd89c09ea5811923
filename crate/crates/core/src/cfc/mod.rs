//! Cross-free convex count instances: family checks, the laminar rewrite,
//! the flow model and the small-set domain reduction.

use thiserror::Error;

use crate::cost::CostError;
use crate::flow::FlowError;
use crate::model::ModelError;

pub mod domains;
pub mod family;
pub mod laminar;
pub mod network;

pub use domains::{reduce_domains_pairsets, BackMap, Origin};
pub use family::{check_convexity, check_family, check_instance_family, BitSet, ConvexityReport, FamilyKind, FamilyReport, Universe};
pub use laminar::{build_laminar_forest, crossfree_to_laminar, LaminarForest};
pub use network::{build_network, solve_cfc, NetworkMap};

#[derive(Debug, Error)]
pub enum CfcError {
    #[error("sets {a} and {b} overlap and do not cover every assignment: the family is not cross-free")]
    NotCrossFree { a: usize, b: usize },
    #[error("sets {a} and {b} overlap: the family is not laminar")]
    NotLaminar { a: usize, b: usize },
    #[error("count function of set {set} is not convex at count {index}")]
    NonConvex { set: usize, index: usize },
    #[error("set {set} has {size} members; at most 2 are allowed")]
    SetTooLarge { set: usize, size: usize },
    #[error("internal check failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Cost(#[from] CostError),
}
