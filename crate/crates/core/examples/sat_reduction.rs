//! Positive 1-in-3-SAT encoded as (2,1)-cluster editing; the deleted
//! clause edges of a solution spell out a satisfying assignment.

use std::fmt::Write as _;

use mpce::generators::{build_sat_reduction, canonical_cost_bound, Formula};
use mpce::oracle::sat_one_in_three;
use mpce::{solve_decision, Solution};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let formulas = [
        Formula::new(3, vec![[0, 1, 2]])?,
        Formula::new(5, vec![[0, 1, 2], [2, 3, 4], [0, 3, 4]])?,
        Formula::new(4, vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])?,
    ];
    let mut out = String::new();
    for f in &formulas {
        let k = canonical_cost_bound(f) as u32;
        let layout = build_sat_reduction(f, Some(k))?;
        let (sol, stats) = solve_decision(layout.instance.clone());
        write!(
            out,
            "{:?}: {} vertices, k={k}, brute force {:?}; ",
            f.clauses(),
            layout.graph.n(),
            sat_one_in_three(f)?
        )?;
        match sol {
            Solution::Yes { script, .. } => {
                let asg = layout.recover_assignment(f, &script);
                writeln!(
                    out,
                    "solver yes in {} nodes, assignment {asg:?}",
                    stats.nodes_expanded
                )?;
            }
            Solution::No { reason } => writeln!(
                out,
                "solver no ({reason}) in {} nodes",
                stats.nodes_expanded
            )?,
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
