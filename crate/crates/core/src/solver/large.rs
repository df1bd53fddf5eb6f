use crate::graph::{AnnotatedInstance, NoReason, PairState, Solution};
use crate::reduction::{reduce, ReductionOutcome};

use super::{large_cluster_regime, SolveStats, SolverError};

/// For `s > 2(a+d)` and `a, d > 0` the reduction decides every pair, so the
/// answer is read off the reduced instance without branching.
pub fn solve_large_clusters(
    inst: AnnotatedInstance,
) -> Result<(Solution, SolveStats), SolverError> {
    let p = *inst.params();
    if !large_cluster_regime(p.a, p.d, p.s) {
        return Err(SolverError::NotLargeClusters {
            a: p.a,
            d: p.d,
            s: p.s,
        });
    }
    let (outcome, trace) = reduce(inst);
    let stats = SolveStats {
        nodes_expanded: 1,
        reductions_applied: trace.len() as u64,
        branch_free: true,
    };
    let inst = match outcome {
        ReductionOutcome::Reduced(inst) => inst,
        ReductionOutcome::NoInstance(reason) => return Ok((Solution::No { reason }, stats)),
    };
    let verts: Vec<usize> = inst.active_vertices().collect();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            if matches!(inst.state(u, v), PairState::Edge | PairState::NonEdge) {
                return Err(SolverError::Undecided(u, v));
            }
        }
    }
    let (comps, cluster_graph) = inst.components();
    if !cluster_graph {
        let (u, v, w) = inst
            .find_conflict_triple()
            .expect("non-clique component has a conflict triple");
        return Err(SolverError::OpenTriple(u, v, w));
    }
    if comps.iter().any(|c| c.len() < p.s as usize) {
        return Ok((
            Solution::No {
                reason: NoReason::SmallCluster,
            },
            stats,
        ));
    }
    Ok((inst.to_solution(), stats))
}
