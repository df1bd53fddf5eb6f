//! Minimum edits for two triangles joined by a bridge, then the same graph
//! under a minimum cluster size that forces a merge.

use std::fmt::Write as _;

use mpce::{solve_minimum, AnnotatedInstance, Graph, Overrides, Params, Solution};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])?;
    let mut out = String::new();
    for s in [1, 4, 6] {
        let params = Params::unbounded(3, 3, s)?;
        let inst = AnnotatedInstance::build(&g, params, &Overrides::default())?;
        let (sol, stats) = solve_minimum(inst);
        match sol {
            Solution::Yes { script, clusters } => {
                let edits: Vec<String> = script.iter().map(|e| e.to_string()).collect();
                writeln!(
                    out,
                    "s={s}: {} edits [{}] clusters {clusters:?}",
                    script.len(),
                    edits.join(", ")
                )?;
            }
            Solution::No { reason } => writeln!(out, "s={s}: no ({reason})")?,
        }
        writeln!(out, "  search nodes {}", stats.nodes_expanded)?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
