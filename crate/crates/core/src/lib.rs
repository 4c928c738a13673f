//! Heuristic treedepth solver.
//!
//! A treedepth decomposition of a graph is a rooted forest on the same
//! vertex set such that every edge of the graph joins an ancestor with a
//! descendant. This crate computes low-depth decompositions with a family
//! of greedy elimination-ordering heuristics and a divide & conquer phase
//! that splits the graph on small balanced vertex cuts found by an
//! incremental vertex max-flow procedure.
//!
//! The main entry points are:
//!
//! * [`Graph::parse_gr`] for reading PACE-style `.gr` input,
//! * [`solver::solve`] for the full pipeline,
//! * the individual heuristics in [`greedy`],
//! * [`decomposition::verify_decomposition`] for fast checking of a
//!   claimed decomposition,
//! * [`tree_io`] for the `.tree` output format.
//!
//! The `tdf` binary wraps all of this in a PACE-compatible command line.

pub mod decomposition;
mod dsu;
pub mod flowcutter;
pub mod generators;
pub mod graph;
pub mod greedy;
pub mod heap;
pub mod solver;
pub mod tree_io;

pub use decomposition::{
    build_from_ordering, ordering_from_parents, verify_decomposition, Decomposition, Ordering,
    Violation,
};
pub use graph::{Graph, SubgraphMap, VertexId};
pub use greedy::{greedy_build, greedy_build_lookahead, greedy_eliminate, greedy_superfast};
pub use solver::{solve, Budget};
