//! One-sided crossing minimization on two-layer drawings.
//!
//! The fixed layer is ordered; the task is to order the free layer so that
//! straight-line edges cross as little as possible. The crate provides
//! crossing counts, the penalty digraph with its topological-order
//! algorithm, exact and heuristic solvers, an exhaustive search for trees
//! whose penalty digraph is cyclic, the 4-star to tree reduction, and
//! text/SVG formats.

pub mod crossings;
pub mod fas;
pub mod generate;
pub mod instance;
pub mod io;
pub mod penalty;
pub mod reduction;
pub mod search;
pub mod solvers;

pub use crossings::{
    count_crossings, count_crossings_reference, crossing_matrix, pairwise_crossings, CrossingMatrix,
};
pub use instance::{FixedId, FreeId, Instance, InstanceError, Labels, Ordering, OrderingError};
pub use penalty::{build_penalty_graph, harrigan_healy_order, Arc, CyclicWitness, PenaltyGraph, TopoOutcome};
pub use solvers::{
    barycenter, brute_force_opt, fas_accounting, greedy_switch, median, solve_exact, solve_exact_with_limit,
    FasError, FasReport, Method, SolveError, SolveResult,
};
