mod common;

use common::{instance, params};
use mpce::generators::{planted_instance, random_graph};
use mpce::graph::{validate_solution, AnnotatedInstance, Edit, Graph, PairState, Solution};
use mpce::oracle::{oracle_for_graph, oracle_minimum, OracleProblem};
use mpce::reduction::{reduce, ReductionOutcome};
use mpce::solver::{solve, solve_decision, solve_minimum, Mode};
use proptest::prelude::*;

/// Minimum total cost reachable from `inst`, by reduce-free brute force.
fn node_minimum(inst: &AnnotatedInstance) -> Option<usize> {
    let (problem, _) = OracleProblem::residual(inst).unwrap();
    oracle_minimum(&problem)
        .min_cost
        .map(|c| c + inst.edit_log().len())
}

#[test]
fn three_way_branching_is_complete() {
    let mut checked = 0;
    for seed in 0..300u64 {
        let g = random_graph(5 + (seed % 3) as usize, 0.5, seed);
        for (a, d, s) in [(1, 1, 1), (2, 1, 2), (1, 2, 2), (2, 2, 3)] {
            let inst = instance(&g, params(a, d, s, Some(6)));
            let Some((u, v, w)) = inst.find_conflict_triple() else {
                continue;
            };
            checked += 1;
            let children: Vec<Option<usize>> =
                [Edit::delete(u, v), Edit::delete(u, w), Edit::add(v, w)]
                    .into_iter()
                    .map(|e| {
                        let mut child = inst.clone();
                        child.apply_edit(e).ok()?;
                        node_minimum(&child)
                    })
                    .collect();
            let best_child = children.into_iter().flatten().min();
            assert_eq!(best_child, node_minimum(&inst), "seed {seed} ({a},{d},{s})");
        }
    }
    assert!(checked > 500);
}

#[test]
fn decision_yes_implies_valid_and_matches_oracle() {
    for seed in 0..150u64 {
        let g = random_graph(7, 0.45, seed);
        for k in [0, 2, 4] {
            let p = params(2, 1, 2, Some(k));
            let expected = oracle_for_graph(&g, &p).unwrap();
            let (sol, _) = solve_decision(instance(&g, p));
            assert_eq!(sol.is_yes(), expected.feasible(), "seed {seed} k {k}");
            if let Solution::Yes { script, clusters } = sol {
                assert!(script.len() <= k as usize);
                let actual = validate_solution(&g, &script, &p).unwrap();
                let mut listed = clusters;
                listed.sort();
                assert_eq!(listed, actual);
            }
        }
    }
}

#[test]
fn spec_like_examples() {
    let bridged = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap();
    assert_eq!(
        solve_minimum(instance(&bridged, params(3, 3, 1, None)))
            .0
            .cost(),
        Some(1)
    );
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    assert!(!solve_minimum(instance(&p3, params(0, 0, 1, None)))
        .0
        .is_yes());
    assert_eq!(
        solve_decision(instance(&p3, params(1, 1, 1, Some(1))))
            .0
            .cost(),
        Some(1)
    );
    assert!(!solve_decision(instance(&p3, params(1, 1, 1, Some(0))))
        .0
        .is_yes());
}

#[test]
fn residual_oracle_sees_annotations() {
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let mut inst = instance(&p3, params(1, 1, 1, None));
    inst.apply_edit(Edit::add(0, 2)).unwrap();
    assert_eq!(inst.pair_state(0, 2).unwrap(), PairState::PermanentEdge);
    assert_eq!(node_minimum(&inst), Some(1));
    let mut inst = instance(&p3, params(1, 1, 1, None));
    inst.apply_edit(Edit::delete(0, 1)).unwrap();
    assert_eq!(node_minimum(&inst), Some(1));
}

#[test]
fn planted_instances_are_recovered_cheaply() {
    for seed in 0..40u64 {
        let planted = planted_instance(&[3, 3, 2], 2, seed).unwrap();
        let (sol, _) = solve_minimum(instance(&planted.graph, params(3, 3, 1, None)));
        assert!(sol.cost().unwrap() <= 2, "seed {seed}");
    }
    let one_flip = planted_instance(&[3, 3], 1, 4).unwrap();
    let r = oracle_for_graph(&one_flip.graph, &params(3, 3, 1, None)).unwrap();
    assert!(r.min_cost.unwrap() <= 1);
    let none = planted_instance(&[4, 2], 0, 4).unwrap();
    assert_eq!(
        oracle_for_graph(&none.graph, &params(3, 3, 1, None))
            .unwrap()
            .min_cost,
        Some(0)
    );
}

#[test]
fn every_mode_agrees_where_it_applies() {
    for seed in 0..60u64 {
        let g = random_graph(7, 0.3, seed);
        let p = params(0, 1, 1 + (seed % 2) as u32, None);
        let branch = solve(instance(&g, p), Mode::Branch).unwrap().0.cost();
        let matching = solve(instance(&g, p), Mode::ZeroOne).unwrap().0.cost();
        assert_eq!(branch, matching, "seed {seed}");
    }
    for seed in 0..60u64 {
        let planted = planted_instance(&[5, 4], (seed % 4) as usize, seed).unwrap();
        let p = params(1, 1, 5, None);
        let branch = solve(instance(&planted.graph, p), Mode::Branch)
            .unwrap()
            .0
            .cost();
        let (poly, stats) = solve(instance(&planted.graph, p), Mode::Auto).unwrap();
        assert_eq!(branch, poly.cost(), "seed {seed}");
        assert!(stats.branch_free);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimum_matches_oracle(n in 0usize..7, p in 0.1f64..0.9, seed in any::<u64>(), a in 0u32..3, d in 0u32..3, s in 1u32..4) {
        let g = random_graph(n, p, seed);
        let par = params(a, d, s, None);
        let expected = oracle_for_graph(&g, &par).unwrap().min_cost;
        let (sol, _) = solve_minimum(instance(&g, par));
        prop_assert_eq!(sol.cost(), expected);
    }

    #[test]
    fn reduction_never_reports_false_no(n in 1usize..8, seed in any::<u64>(), k in 0u32..6) {
        let g = random_graph(n, 0.5, seed);
        let par = params(1, 1, 2, Some(k));
        if let ReductionOutcome::NoInstance(reason) = reduce(instance(&g, par)).0 {
            prop_assert!(!oracle_for_graph(&g, &par).unwrap().feasible(), "false {}", reason);
        }
    }
}
