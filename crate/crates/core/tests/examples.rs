//! Runs every example and checks the headline of its output.

#[path = "../examples/cli_session.rs"]
mod cli_session;
#[path = "../examples/decision_budget.rs"]
mod decision_budget;
#[path = "../examples/file_formats.rs"]
mod file_formats;
#[path = "../examples/gadgets.rs"]
mod gadgets;
#[path = "../examples/large_clusters.rs"]
mod large_clusters;
#[path = "../examples/oracle_crosscheck.rs"]
mod oracle_crosscheck;
#[path = "../examples/reduce_kernel.rs"]
mod reduce_kernel;
#[path = "../examples/sat_reduction.rs"]
mod sat_reduction;
#[path = "../examples/solve_minimum.rs"]
mod solve_minimum;
#[path = "../examples/zero_one_matching.rs"]
mod zero_one_matching;

#[test]
fn cli_session_verifies_its_solution() {
    let out = cli_session::run_example().unwrap();
    assert!(out.contains("valid: 3 edits, 3 clusters"), "{out}");
}

#[test]
fn decision_budget_finds_threshold() {
    let out = decision_budget::run_example().unwrap();
    assert!(
        out.contains("k=6: no") && out.ends_with("k=7: yes after 7 nodes\n"),
        "{out}"
    );
}

#[test]
fn file_formats_revalidate() {
    let out = file_formats::run_example().unwrap();
    assert!(out.contains("s yes 2\ndel 0 1\ndel 3 4\n"), "{out}");
    assert!(out.contains("line 2: self-loop"), "{out}");
}

#[test]
fn gadget_partition_counts() {
    let out = gadgets::run_example().unwrap();
    assert!(
        out.contains("clause gadget") && out.contains(": 3 feasible partitions"),
        "{out}"
    );
    assert!(out.contains(": 16 feasible partitions"), "{out}");
}

#[test]
fn large_clusters_never_branch() {
    let out = large_clusters::run_example().unwrap();
    assert_eq!(out.matches("branch-free true").count(), 6, "{out}");
    for line in out.lines() {
        let (poly, rest) = line.split_once(" (").unwrap();
        let branching = rest.split_once("branching ").unwrap().1;
        assert!(
            branching.starts_with(poly.rsplit_once("poly ").unwrap().1),
            "{line}"
        );
    }
}

#[test]
fn oracle_crosscheck_agrees() {
    let out = oracle_crosscheck::run_example().unwrap();
    assert!(out.contains("60/60 instances agree"), "{out}");
}

#[test]
fn reduce_kernel_within_bounds() {
    let out = reduce_kernel::run_example().unwrap();
    assert!(
        out.contains("kernel: 11 vertices (bound Some(40))"),
        "{out}"
    );
}

#[test]
fn sat_reduction_verdicts() {
    let out = sat_reduction::run_example().unwrap();
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(
        lines[0].contains("solver yes") && lines[1].contains("solver yes"),
        "{out}"
    );
    assert!(
        lines[2].contains("brute force None") && lines[2].contains("solver no"),
        "{out}"
    );
}

#[test]
fn solve_minimum_costs() {
    let out = solve_minimum::run_example().unwrap();
    assert!(out.starts_with("s=1: 1 edits [del 2 3]"), "{out}");
    assert!(
        out.contains("s=4: 8 edits") && out.contains("s=6: 8 edits"),
        "{out}"
    );
}

#[test]
fn zero_one_cases() {
    let out = zero_one_matching::run_example().unwrap();
    assert!(out.contains("P4 s=1: 1 deletions"), "{out}");
    assert!(out.contains("C5 s=1: no"), "{out}");
    assert!(out.contains("C6 s=2: 3 deletions"), "{out}");
    assert!(out.contains("K1,3 s=1: no"), "{out}");
}
