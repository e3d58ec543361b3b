//! Diverse near-optimal solutions for monotone submodular maximization under
//! matroid and other downward-closed constraints.
//!
//! Two greedy algorithms produce `r` feasible solutions whose pairwise
//! Hamming distances sum high while every solution keeps a guaranteed
//! fraction of the optimum:
//!
//! * [`run_common_greedy`] shares `b` greedily chosen elements across all
//!   solutions and spends the remaining budget on diversity.
//! * [`run_replimit_greedy`] grows all solutions in lockstep from the best
//!   singleton and caps how many solutions may share any other element.
//!
//! Each run records a [`RunTrace`], and the `verify_*` functions turn the
//! known guarantees into checks over a run. [`bruteforce`] holds exact
//! solvers for small instances.

pub mod bruteforce;
pub mod common_greedy;
pub mod diversity;
mod engine;
pub mod error;
pub mod graph;
pub mod harness;
pub mod matroids;
pub mod objectives;
mod pool;
pub mod replimit_greedy;
pub mod solution;
pub mod trace;
pub mod verify;

pub use common_greedy::{run_common_greedy, CommonGreedyConfig};
pub use diversity::{
    closure_sharpened_bound, delta, g, g_bound, matroid_diversity_upper_bound,
    pairwise_distance_sum, partition_diversity_upper_bound, GBoundInputs,
};
pub use error::{Error, Result};
pub use graph::Graph;
pub use matroids::{
    closure_of, feasible_extensions, has_loops, rank_of, CountingOracle, ExplicitMatroid,
    IndependenceOracle, IntersectionConstraint, Matroid, PartitionMatroid, UniformMatroid,
};
pub use objectives::{ModularObjective, Value, ValueOracle, VertexCoverage};
pub use replimit_greedy::{run_replimit_greedy, RepLimitConfig};
pub use solution::{ElementId, Solution, SolutionMultiset};
pub use trace::{Phase, RunOutput, RunTrace, TraceStep};
pub use verify::{BoundCheck, Verdict};
