//! Exact cluster editing under per-vertex addition and deletion budgets, a
//! minimum cluster size and an optional global edit budget.
//!
//! The pieces, bottom up:
//!
//! * [`graph`]: annotated instances (pair states, residual budgets, edit log)
//!   and solution validation.
//! * [`reduction`]: the seventeen reduction rules and their fixpoint driver.
//! * [`solver`]: branch-and-reduce plus two polynomial special cases.
//! * [`oracle`]: brute force over all partitions, used as ground truth.
//! * [`generators`]: SAT gadgets and seeded random instances.
//! * [`format`] and [`cli`]: text formats and the `mpce` command.

#![allow(clippy::needless_range_loop)]

pub mod bits;
pub mod cli;
pub mod format;
pub mod generators;
pub mod graph;
pub mod oracle;
pub mod reduction;
pub mod solver;

pub use graph::{
    AnnotatedInstance, Edit, EditKind, Graph, NoReason, Overrides, PairState, Params, Solution,
};
pub use reduction::{reduce, ReductionOutcome};
pub use solver::{
    solve, solve_decision, solve_large_clusters, solve_minimum, solve_zero_one, Mode, SolveStats,
};
