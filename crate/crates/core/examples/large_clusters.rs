//! When s > 2(a+d) the rules decide every pair and no branching is needed.

use std::fmt::Write as _;

use mpce::generators::planted_instance;
use mpce::{solve_large_clusters, solve_minimum, AnnotatedInstance, Overrides, Params};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let params = Params::unbounded(1, 1, 5)?;
    let mut out = String::new();
    for seed in 0..6 {
        let planted = planted_instance(&[5, 6], 2, seed)?;
        let build = || AnnotatedInstance::build(&planted.graph, params, &Overrides::default());
        let (poly, stats) = solve_large_clusters(build()?)?;
        let (branch, bstats) = solve_minimum(build()?);
        writeln!(
            out,
            "seed {seed}: poly {:?} ({} node, branch-free {}), branching {:?} ({} nodes)",
            poly.cost(),
            stats.nodes_expanded,
            stats.branch_free,
            branch.cost(),
            bstats.nodes_expanded
        )?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
