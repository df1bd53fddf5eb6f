use mpce::generators::{
    build_sat_reduction, canonical_cost, canonical_cost_bound, clause_gadget, variable_gadget,
    Formula, SAT_PARAMS,
};
use mpce::graph::{validate_solution, Params, Solution};
use mpce::oracle::{oracle_for_graph, sat_one_in_three};
use mpce::solver::solve_decision;

#[test]
fn reduction_sizes_follow_formula() {
    let formulas = [
        Formula::new(3, vec![[0, 1, 2]]).unwrap(),
        Formula::new(4, vec![[0, 1, 2], [0, 1, 3]]).unwrap(),
        Formula::new(5, vec![[0, 1, 2], [2, 3, 4], [0, 3, 4]]).unwrap(),
    ];
    for f in &formulas {
        let layout = build_sat_reduction(f, None).unwrap();
        let m = f.clauses().len();
        let nv = f.num_vars();
        assert_eq!(layout.graph.n(), 6 * m + 8 * nv);
        assert_eq!(layout.graph.m(), 11 * m + 8 * nv);
    }
}

#[test]
fn single_clause_is_yes_with_valid_assignment() {
    let f = Formula::new(3, vec![[0, 1, 2]]).unwrap();
    let layout = build_sat_reduction(&f, Some(canonical_cost_bound(&f) as u32)).unwrap();
    let (sol, _) = solve_decision(layout.instance.clone());
    let Solution::Yes { script, .. } = sol else {
        panic!("expected yes")
    };
    assert!(f.is_one_in_three(&layout.recover_assignment(&f, &script)));
}

#[test]
fn unsat_formula_is_no() {
    let f = Formula::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
    assert_eq!(sat_one_in_three(&f).unwrap(), None);
    let layout = build_sat_reduction(&f, Some(canonical_cost_bound(&f) as u32)).unwrap();
    assert!(!solve_decision(layout.instance).0.is_yes());
}

#[test]
fn canonical_layouts_are_valid_for_every_satisfying_assignment() {
    let f = Formula::new(5, vec![[0, 1, 2], [2, 3, 4], [0, 3, 4]]).unwrap();
    let (a, d, s) = SAT_PARAMS;
    let layout = build_sat_reduction(&f, None).unwrap();
    let mut found = 0;
    for code in 0u32..32 {
        let asg: Vec<bool> = (0..5).map(|i| code >> i & 1 == 1).collect();
        if !f.is_one_in_three(&asg) {
            continue;
        }
        found += 1;
        let script = layout.canonical_script(&f, &asg);
        assert_eq!(script.len(), canonical_cost(&f, &asg));
        let p = Params::new(a, d, s, Some(script.len() as u32)).unwrap();
        validate_solution(&layout.graph, &script, &p).unwrap();
        assert_eq!(layout.recover_assignment(&f, &script), asg);
    }
    assert!(found > 0);
}

#[test]
fn gadget_minimum_costs() {
    let p = Params::new(2, 1, 1, None).unwrap();
    // clause: cut 3-4, cut one stub, join the other two stubs with the hub
    assert_eq!(
        oracle_for_graph(&clause_gadget().graph, &p)
            .unwrap()
            .min_cost,
        Some(5)
    );
    // variable: drop the pendants and close the cycle into a K4
    assert_eq!(
        oracle_for_graph(&variable_gadget().graph, &p)
            .unwrap()
            .min_cost,
        Some(6)
    );
}
