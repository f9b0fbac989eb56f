//! Zero forcing and resilient forcing sets on undirected graphs, with
//! leader selection and numeric controllability spot-checks.
//!
//! Zero forcing is an iterative coloring process: a black node with exactly
//! one white neighbor forces it black, and an input set whose closure
//! covers the whole graph is a *zero forcing set* — exactly the leader sets
//! that render a networked linear system strongly structurally
//! controllable. This crate implements the forcing engine
//! ([`forcing`]), verifiers for three hardened variants that survive leaky
//! nodes, disabled edges, or removed edges ([`resilience`]), greedy and
//! exact leader-set construction ([`selection`]), and sampled
//! controllability-matrix rank checks that tie the combinatorics back to
//! the linear algebra ([`controllability`]).

pub mod bitset;
pub mod budget;
mod combo;
pub mod controllability;
pub mod fixtures;
pub mod forcing;
pub mod graph;
pub mod resilience;
pub mod selection;

pub use bitset::NodeSet;
pub use budget::{Budget, BudgetExceeded};
pub use forcing::{
    apply_forcing, derived_set, is_zfs, Constraints, Force, ForcingError, ForcingRecord,
};
pub use graph::{Edge, EdgeSet, Graph, GraphError};
pub use resilience::{
    equivalence_audit, is_l_efs, is_l_fsr, is_l_lfs, leaky_forcing_number, LfsMethod,
    ResilienceKind, Verdict,
};
pub use selection::{
    exact_min_l_lfs, exact_min_zfs, greedy_1lfs, greedy_l_lfs, greedy_zfs, GreedyOptions,
    SelectionError, SelectionResult,
};
