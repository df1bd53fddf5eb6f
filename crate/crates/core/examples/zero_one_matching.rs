//! (0,1) instances: each vertex may lose one edge and gain none, so a
//! solution is a matching of the remaining paths and cycles.

use std::fmt::Write as _;

use mpce::{solve_zero_one, AnnotatedInstance, Graph, Overrides, Params, Solution};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let cases: Vec<(&str, Graph)> = vec![
        ("P4", Graph::new(4, [(0, 1), (1, 2), (2, 3)])?),
        (
            "C5",
            Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])?,
        ),
        (
            "C6",
            Graph::new(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)])?,
        ),
        ("K1,3", Graph::new(4, [(0, 1), (0, 2), (0, 3)])?),
        (
            "P5 + K3",
            Graph::new(8, [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (5, 7)])?,
        ),
    ];
    let mut out = String::new();
    for (name, g) in cases {
        for s in [1, 2] {
            let inst =
                AnnotatedInstance::build(&g, Params::unbounded(0, 1, s)?, &Overrides::default())?;
            let (sol, _) = solve_zero_one(inst)?;
            match sol {
                Solution::Yes { script, clusters } => writeln!(
                    out,
                    "{name} s={s}: {} deletions, clusters {clusters:?}",
                    script.len()
                )?,
                Solution::No { reason } => writeln!(out, "{name} s={s}: no ({reason})")?,
            }
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
