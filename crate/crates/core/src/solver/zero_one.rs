use crate::graph::{AnnotatedInstance, Edit, NoReason, Solution};
use crate::reduction::{reduce, ReductionOutcome};

use super::{zero_one_regime, SolveStats, SolverError};

/// `(0,1)` instances: no additions and at most one deletion per vertex, so
/// after reduction every component is a clique, a path or a cycle, and the
/// kept edges of a path or cycle form a matching.
pub fn solve_zero_one(inst: AnnotatedInstance) -> Result<(Solution, SolveStats), SolverError> {
    let p = *inst.params();
    if !zero_one_regime(p.a, p.d, p.s) {
        return Err(SolverError::NotZeroOne {
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
    let no = |reason| Ok((Solution::No { reason }, stats));
    let cover = p.s == 2;
    let mut deletions = Vec::new();
    for comp in inst.active_components() {
        let size = comp.len();
        if comp.iter().all(|&v| inst.degree(v) == size - 1) {
            if size < p.s as usize {
                return no(NoReason::Unmatchable);
            }
            continue;
        }
        if comp.iter().any(|&v| inst.degree(v) >= 3) {
            return no(NoReason::DegreeThree);
        }
        let (order, cyclic) = walk(&inst, &comp);
        let edges = if cyclic { order.len() } else { order.len() - 1 };
        let endpoints = |j: usize| (order[j], order[(j + 1) % order.len()]);
        let line = Line {
            degree: order.iter().map(|&v| inst.degree(v)).collect(),
            delta: order.iter().map(|&v| inst.delta(v)).collect(),
            forced: (0..edges)
                .map(|j| {
                    let (u, v) = endpoints(j);
                    inst.permanent_neighbors(u).contains(v)
                })
                .collect(),
            cyclic,
            cover,
        };
        let Some(kept) = line.best_matching() else {
            return no(NoReason::Unmatchable);
        };
        for (j, &keep) in kept.iter().enumerate() {
            if !keep {
                let (u, v) = endpoints(j);
                deletions.push(Edit::delete(u, v));
            }
        }
    }
    if inst
        .residual_k()
        .is_some_and(|k| (deletions.len() as i64) > k)
    {
        return no(NoReason::OverBudget);
    }
    let mut done = inst;
    for e in deletions {
        done.apply_edit(e)
            .expect("matching respects the deletion budgets");
    }
    Ok((done.to_solution(), stats))
}

/// Orders a path from its smaller end, or a cycle from its minimum vertex
/// toward the smaller neighbor.
fn walk(inst: &AnnotatedInstance, comp: &[usize]) -> (Vec<usize>, bool) {
    let cyclic = comp.iter().all(|&v| inst.degree(v) == 2);
    let start = if cyclic {
        comp[0]
    } else {
        *comp
            .iter()
            .find(|&&v| inst.degree(v) <= 1)
            .expect("paths have an end")
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < comp.len() {
        let next = inst
            .neighbors(cur)
            .iter()
            .find(|&y| y != prev && y != start)
            .expect("component is connected");
        order.push(next);
        prev = cur;
        cur = next;
    }
    (order, cyclic)
}

/// A path or cycle; edge `j` joins positions `j` and `j + 1` (mod length).
struct Line {
    degree: Vec<usize>,
    delta: Vec<i64>,
    forced: Vec<bool>,
    cyclic: bool,
    cover: bool,
}

impl Line {
    fn vertex_ok(&self, i: usize, matched: usize) -> bool {
        matched <= 1
            && (self.degree[i] - matched) as i64 <= self.delta[i]
            && (!self.cover || matched == 1)
    }

    /// Largest matching (as kept flags per edge) with every forced edge kept
    /// and each vertex losing at most its residual deletions.
    fn best_matching(&self) -> Option<Vec<bool>> {
        let edges = self.forced.len();
        if edges == 0 {
            return self.vertex_ok(0, 0).then(Vec::new);
        }
        let closings: &[usize] = if self.cyclic { &[0, 1] } else { &[0] };
        let mut best: Option<(usize, Vec<bool>)> = None;
        for &closing in closings {
            if let Some(found) = self.chain(closing) {
                if best.as_ref().is_none_or(|b| found.0 > b.0) {
                    best = Some(found);
                }
            }
        }
        best.map(|(_, kept)| kept)
    }

    /// DP over edges; state is whether the previous edge is kept. For a cycle
    /// `closing` fixes the last edge, which also touches position 0.
    fn chain(&self, closing: usize) -> Option<(usize, Vec<bool>)> {
        let edges = self.forced.len();
        // score[x]: best count with edge j kept iff x == 1
        let mut score: [Option<usize>; 2] = [None, None];
        let mut parent = vec![[0usize; 2]; edges];
        let first_left = if self.cyclic { closing } else { 0 };
        for j in 0..edges {
            let mut next: [Option<usize>; 2] = [None, None];
            for x in 0..2 {
                if self.forced[j] && x == 0 {
                    continue;
                }
                if self.cyclic && j == edges - 1 && x != closing {
                    continue;
                }
                let lefts: Vec<(usize, usize)> = if j == 0 {
                    vec![(first_left, 0)]
                } else {
                    (0..2).filter_map(|l| score[l].map(|sc| (l, sc))).collect()
                };
                for (l, sc) in lefts {
                    if !self.vertex_ok(j, l + x) {
                        continue;
                    }
                    if next[x].is_none_or(|b| sc + x > b) {
                        next[x] = Some(sc + x);
                        parent[j][x] = l;
                    }
                }
            }
            score = next;
        }
        let last = edges;
        let mut end = None;
        for x in 0..2 {
            let Some(sc) = score[x] else { continue };
            if !self.cyclic && !self.vertex_ok(last, x) {
                continue;
            }
            if end.is_none_or(|(_, b)| sc > b) {
                end = Some((x, sc));
            }
        }
        let (mut x, total) = end?;
        let mut kept = vec![false; edges];
        for j in (0..edges).rev() {
            kept[j] = x == 1;
            x = parent[j][x];
        }
        Some((total, kept))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Graph, Overrides, Params};

    fn run(n: usize, edges: &[(usize, usize)], s: u32) -> Solution {
        let g = Graph::new(n, edges.iter().copied()).unwrap();
        let inst = AnnotatedInstance::build(
            &g,
            Params::new(0, 1, s, None).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        solve_zero_one(inst).unwrap().0
    }

    #[test]
    fn p4_keeps_outer_edges() {
        let Solution::Yes { script, clusters } = run(4, &[(0, 1), (1, 2), (2, 3)], 1) else {
            panic!()
        };
        assert_eq!(script, vec![Edit::delete(1, 2)]);
        assert_eq!(clusters, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn odd_cycle_is_no() {
        let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)];
        assert!(!run(5, &c5, 1).is_yes());
        let c6 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)];
        assert_eq!(run(6, &c6, 2).cost(), Some(3));
    }

    #[test]
    fn star_is_no() {
        assert!(!run(4, &[(0, 1), (0, 2), (0, 3)], 1).is_yes());
    }

    #[test]
    fn singletons_need_s1() {
        assert_eq!(run(3, &[(0, 1)], 1).cost(), Some(0));
        assert!(!run(3, &[(0, 1)], 2).is_yes());
        assert_eq!(run(3, &[(0, 1), (1, 2)], 1).cost(), Some(1));
        assert!(!run(3, &[(0, 1), (1, 2)], 2).is_yes());
    }

    #[test]
    fn wrong_regime() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let inst = AnnotatedInstance::build(
            &g,
            Params::new(1, 1, 1, None).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        assert!(matches!(
            solve_zero_one(inst),
            Err(SolverError::NotZeroOne { .. })
        ));
    }
}
