//! Every feasible (2,1) resolution of the two gadgets, by brute force.

use std::fmt::Write as _;

use mpce::generators::{clause_gadget, variable_gadget};
use mpce::oracle::{feasible_partitions, OracleProblem};
use mpce::Params;

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let params = Params::unbounded(2, 1, 1)?;
    let mut out = String::new();
    for (name, fragment) in [("clause", clause_gadget()), ("variable", variable_gadget())] {
        let problem = OracleProblem::new(&fragment.graph, &params)?;
        let mut parts = feasible_partitions(&problem);
        parts.sort();
        writeln!(
            out,
            "{name} gadget, labels {:?}: {} feasible partitions",
            fragment.labels,
            parts.len()
        )?;
        for (cost, blocks) in parts.iter().take(4) {
            writeln!(out, "  cost {cost}: {blocks:?}")?;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
