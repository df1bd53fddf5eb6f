use crate::graph::{AnnotatedInstance, Edit, NoReason, PairState, Solution};
use crate::reduction::{reduce, ReductionOutcome};

use super::SolveStats;

#[derive(Clone, Debug)]
pub struct SearchNode {
    pub instance: AnnotatedInstance,
    pub depth: usize,
}

#[derive(Default)]
struct Search {
    stats: SolveStats,
    branched: bool,
}

impl Search {
    fn finish(&mut self) {
        self.stats.branch_free = !self.branched;
    }

    fn explore(&mut self, node: SearchNode) -> Result<AnnotatedInstance, NoReason> {
        self.stats.nodes_expanded += 1;
        let (outcome, trace) = reduce(node.instance);
        self.stats.reductions_applied += trace.len() as u64;
        let inst = match outcome {
            ReductionOutcome::Reduced(inst) => inst,
            ReductionOutcome::NoInstance(reason) => return Err(reason),
        };
        let children = match inst.find_conflict_triple() {
            Some(triple) => triple_children(&inst, triple),
            None => match small_component(&inst) {
                Some(comp) => repair_children(&inst, &comp),
                None => return Ok(inst),
            },
        };
        if children.len() > 1 {
            self.branched = true;
        }
        for child in children {
            let depth = node.depth + 1;
            if let Ok(leaf) = self.explore(SearchNode {
                instance: child,
                depth,
            }) {
                return Ok(leaf);
            }
        }
        Err(NoReason::Exhausted)
    }
}

fn with_edit(inst: &AnnotatedInstance, edit: Edit) -> Option<AnnotatedInstance> {
    let mut child = inst.clone();
    child.apply_edit(edit).ok()?;
    Some(child)
}

fn keep(inst: &mut AnnotatedInstance, u: usize, v: usize) {
    if inst.state(u, v) == PairState::Edge {
        inst.make_permanent(u, v);
    }
}

/// `Delete(u,v)`, then `Delete(u,w)` keeping `uv`, then `Add(v,w)` keeping
/// both, so no solution is reachable from two children.
fn triple_children(
    inst: &AnnotatedInstance,
    (u, v, w): (usize, usize, usize),
) -> Vec<AnnotatedInstance> {
    let mut out = Vec::with_capacity(3);
    out.extend(with_edit(inst, Edit::delete(u, v)));
    let mut base = inst.clone();
    keep(&mut base, u, v);
    out.extend(with_edit(&base, Edit::delete(u, w)));
    keep(&mut base, u, w);
    out.extend(with_edit(&base, Edit::add(v, w)));
    out
}

/// First active component (by minimum member) below the minimum size.
fn small_component(inst: &AnnotatedInstance) -> Option<Vec<usize>> {
    let s = inst.params().s as usize;
    inst.active_components().into_iter().find(|c| c.len() < s)
}

/// The cluster of `x = min(comp)` must gain some outside vertex `y`; one
/// child per candidate `y`, each forbidding the candidates tried before it.
fn repair_children(inst: &AnnotatedInstance, comp: &[usize]) -> Vec<AnnotatedInstance> {
    let x = comp[0];
    let candidates: Vec<usize> = inst
        .active_vertices()
        .filter(|&y| y != x && inst.state(x, y) == PairState::NonEdge && !comp.contains(&y))
        .collect();
    let mut out = Vec::with_capacity(candidates.len());
    let mut base = inst.clone();
    for y in candidates {
        out.extend(with_edit(&base, Edit::add(x, y)));
        base.forbid(x, y);
    }
    out
}

/// Branch-and-reduce on the instance as given: conflict triples first, then
/// growth of undersized clusters. Returns the first solution found, which
/// respects the residual global budget when one is present.
pub fn solve_decision(inst: AnnotatedInstance) -> (Solution, SolveStats) {
    let mut search = Search::default();
    let result = search.explore(SearchNode {
        instance: inst,
        depth: 0,
    });
    search.finish();
    (as_solution(result), search.stats)
}

fn as_solution(result: Result<AnnotatedInstance, NoReason>) -> Solution {
    match result {
        Ok(leaf) => leaf.to_solution(),
        Err(reason) => Solution::No { reason },
    }
}

/// Minimum-cost solution. A first unbounded search settles feasibility and
/// yields an upper bound `c`; budgets below `c` are then tried in increasing
/// order and the first success is optimal.
pub fn solve_minimum(inst: AnnotatedInstance) -> (Solution, SolveStats) {
    let mut search = Search::default();
    let first = match search.explore(SearchNode {
        instance: inst.clone(),
        depth: 0,
    }) {
        Ok(leaf) => leaf,
        Err(reason) => {
            search.finish();
            return (Solution::No { reason }, search.stats);
        }
    };
    let upper = first.edit_log().len();
    let lower = inst.edit_log().len();
    for k in lower..upper {
        let bounded = inst.with_global_budget(Some(k as u32));
        if let Ok(leaf) = search.explore(SearchNode {
            instance: bounded,
            depth: 0,
        }) {
            search.finish();
            return (leaf.to_solution(), search.stats);
        }
    }
    search.finish();
    (first.to_solution(), search.stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{validate_solution, Graph, Overrides, Params};

    fn inst(
        n: usize,
        edges: &[(usize, usize)],
        a: u32,
        d: u32,
        s: u32,
        k: Option<u32>,
    ) -> AnnotatedInstance {
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        AnnotatedInstance::build(&g, Params::new(a, d, s, k).unwrap(), &Overrides::default())
            .unwrap()
    }

    #[test]
    fn p3_decision() {
        let (sol, _) = solve_decision(inst(3, &[(0, 1), (1, 2)], 1, 1, 1, Some(1)));
        assert_eq!(sol.cost(), Some(1));
        let (sol, _) = solve_decision(inst(3, &[(0, 1), (1, 2)], 1, 1, 1, Some(0)));
        assert!(!sol.is_yes());
    }

    #[test]
    fn bridged_triangles() {
        let edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)];
        let (sol, _) = solve_minimum(inst(6, &edges, 3, 3, 1, None));
        match sol {
            Solution::Yes { script, clusters } => {
                assert_eq!(script, vec![Edit::delete(2, 3)]);
                assert_eq!(clusters, vec![vec![0, 1, 2], vec![3, 4, 5]]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn frozen_p3_is_no() {
        let (sol, _) = solve_minimum(inst(3, &[(0, 1), (1, 2)], 0, 0, 1, None));
        assert!(!sol.is_yes());
    }

    #[test]
    fn cluster_graph_costs_nothing() {
        let (sol, stats) = solve_minimum(inst(5, &[(0, 1), (2, 3), (3, 4), (2, 4)], 0, 0, 2, None));
        assert_eq!(sol.cost(), Some(0));
        assert!(stats.branch_free);
    }

    #[test]
    fn repair_grows_small_clusters() {
        // two isolated edges must merge into a K4
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let params = Params::new(2, 0, 4, None).unwrap();
        let (sol, _) =
            solve_minimum(AnnotatedInstance::build(&g, params, &Overrides::default()).unwrap());
        let Solution::Yes { script, .. } = sol else {
            panic!()
        };
        assert_eq!(script.len(), 4);
        validate_solution(&g, &script, &params).unwrap();
    }

    #[test]
    fn clause_gadget_leaves_cut_hub_and_one_stub() {
        let g = crate::generators::clause_gadget().graph;
        let params = Params::new(2, 1, 1, Some(9)).unwrap();
        let (sol, _) =
            solve_decision(AnnotatedInstance::build(&g, params, &Overrides::default()).unwrap());
        let Solution::Yes { script, .. } = sol else {
            panic!()
        };
        assert!(script.contains(&Edit::delete(3, 4)));
        let stubs = [6, 7, 8]
            .iter()
            .filter(|&&x| script.contains(&Edit::delete(5, x)))
            .count();
        assert_eq!(stubs, 1);
        validate_solution(&g, &script, &params).unwrap();
    }
}
