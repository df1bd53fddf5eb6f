//! Instance and solution text formats, and checking a script against an
//! instance with per-vertex overrides.

use std::fmt::Write as _;

use mpce::format::{parse_instance, parse_solution, serialize_instance, serialize_solution};
use mpce::graph::{validate_with_budgets, Budgets};
use mpce::{solve_minimum, AnnotatedInstance, Params, Solution};

const INSTANCE: &str = "\
c a path with a chord, vertex 2 may not lose edges
p ce 5 5
d 2 0
e 0 1
e 1 2
e 2 3
e 3 4
e 1 3
";

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let file = parse_instance(INSTANCE)?;
    let params = Params::unbounded(1, 1, 1)?;
    let mut out = String::from("canonical instance:\n");
    out.push_str(&serialize_instance(&file.graph, &file.overrides));
    let inst = AnnotatedInstance::build(&file.graph, params, &file.overrides)?;
    let (sol, _) = solve_minimum(inst);
    let text = serialize_solution(&sol);
    writeln!(out, "solution:\n{}", text.trim_end())?;
    if let Solution::Yes { script, .. } = parse_solution(&text)? {
        let budgets = Budgets::resolve(file.graph.n(), &params, &file.overrides)?;
        let clusters = validate_with_budgets(&file.graph, &script, &params, &budgets)?;
        writeln!(out, "re-validated: clusters {clusters:?}")?;
    }
    match parse_instance("p ce 2 1\ne 0 0\n") {
        Err(e) => writeln!(out, "bad input rejected: {e}")?,
        Ok(_) => unreachable!(),
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
