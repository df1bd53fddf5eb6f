//! Exact solvers.
//!
//! * [`solve_decision`] / [`solve_minimum`]: conflict-triple branching with a
//!   full reduction cascade at every node.
//! * [`solve_large_clusters`]: reduction alone, for `s > 2(a+d)` with `a, d > 0`.
//! * [`solve_zero_one`]: reduction followed by a matching on paths and cycles,
//!   for `(a, d) = (0, 1)` and `s <= 2`.

mod branch;
mod large;
mod zero_one;

use thiserror::Error;

use crate::graph::{AnnotatedInstance, Solution};

pub use branch::{solve_decision, solve_minimum, SearchNode};
pub use large::solve_large_clusters;
pub use zero_one::solve_zero_one;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub reductions_applied: u64,
    /// No node had more than one child.
    pub branch_free: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("polynomial path needs s > 2(a+d) and a, d > 0 (got a={a}, d={d}, s={s}); use the branching solver")]
    NotLargeClusters { a: u32, d: u32, s: u32 },
    #[error("matching path needs a = 0, d = 1 and s <= 2 (got a={a}, d={d}, s={s}); use the branching solver")]
    NotZeroOne { a: u32, d: u32, s: u32 },
    #[error("reduction left pair {0} {1} undecided under s > 2(a+d)")]
    Undecided(usize, usize),
    #[error("reduction left the decided triple ({0}, {1}, {2}) open")]
    OpenTriple(usize, usize, usize),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Mode {
    #[default]
    Auto,
    Branch,
    Poly,
    ZeroOne,
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Mode::Auto),
            "branch" => Ok(Mode::Branch),
            "poly" => Ok(Mode::Poly),
            "zero-one" => Ok(Mode::ZeroOne),
            _ => Err(format!("unknown mode `{s}`")),
        }
    }
}

pub fn large_cluster_regime(a: u32, d: u32, s: u32) -> bool {
    a > 0 && d > 0 && s as u64 > 2 * (a as u64 + d as u64)
}

pub fn zero_one_regime(a: u32, d: u32, s: u32) -> bool {
    a == 0 && d == 1 && s <= 2
}

/// Resolves [`Mode::Auto`] for the given parameters.
pub fn pick_mode(inst: &AnnotatedInstance) -> Mode {
    let p = inst.params();
    if large_cluster_regime(p.a, p.d, p.s) {
        Mode::Poly
    } else if zero_one_regime(p.a, p.d, p.s) {
        Mode::ZeroOne
    } else {
        Mode::Branch
    }
}

/// Minimum solution within the instance's global budget (if any) using the
/// requested strategy.
pub fn solve(inst: AnnotatedInstance, mode: Mode) -> Result<(Solution, SolveStats), SolverError> {
    let mode = match mode {
        Mode::Auto => pick_mode(&inst),
        m => m,
    };
    match mode {
        Mode::Poly => solve_large_clusters(inst),
        Mode::ZeroOne => solve_zero_one(inst),
        _ => Ok(solve_minimum(inst)),
    }
}
