//! Decision version: the same instance under growing global budgets.

use std::fmt::Write as _;

use mpce::generators::random_graph;
use mpce::{solve_decision, AnnotatedInstance, Overrides, Params};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let g = random_graph(9, 0.4, 17);
    let mut out = format!("G(9, 0.4) seed 17: {} edges\n", g.m());
    for k in 0..=12 {
        let params = Params::new(2, 2, 1, Some(k))?;
        let inst = AnnotatedInstance::build(&g, params, &Overrides::default())?;
        let (sol, stats) = solve_decision(inst);
        writeln!(
            out,
            "k={k}: {} after {} nodes",
            if sol.is_yes() { "yes" } else { "no" },
            stats.nodes_expanded
        )?;
        if sol.is_yes() {
            break;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
