//! Brute force over all set partitions as ground truth for the solver.

use std::fmt::Write as _;

use mpce::generators::random_graph;
use mpce::oracle::oracle_for_graph;
use mpce::{solve_minimum, AnnotatedInstance, Overrides, Params};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let mut out = String::new();
    let mut agree = 0;
    let mut total = 0;
    for seed in 0..20 {
        let g = random_graph(7, 0.5, seed);
        for (a, d, s) in [(1, 1, 1), (2, 1, 2), (1, 2, 3)] {
            let params = Params::unbounded(a, d, s)?;
            let oracle = oracle_for_graph(&g, &params)?;
            let (sol, _) =
                solve_minimum(AnnotatedInstance::build(&g, params, &Overrides::default())?);
            total += 1;
            if sol.cost() == oracle.min_cost {
                agree += 1;
            } else {
                writeln!(
                    out,
                    "seed {seed} ({a},{d},{s}): solver {:?} oracle {:?}",
                    sol.cost(),
                    oracle.min_cost
                )?;
            }
        }
    }
    let g = random_graph(6, 0.5, 3);
    let r = oracle_for_graph(&g, &Params::unbounded(2, 2, 2)?)?;
    writeln!(out, "{agree}/{total} instances agree")?;
    writeln!(
        out,
        "seed 3, (2,2,2): cost {:?}, {} optimal partitions",
        r.min_cost,
        r.witnesses.len()
    )?;
    for w in r.witnesses.iter().take(3) {
        writeln!(out, "  {w:?}")?;
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
