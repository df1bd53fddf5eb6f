//! Reduction rules on a noisy planted instance: the rule trace and the
//! kernel size against its bounds.

use std::fmt::Write as _;

use mpce::generators::planted_instance;
use mpce::reduction::{reduce, Action, KernelStats, ReductionOutcome};
use mpce::{AnnotatedInstance, Overrides, Params};

pub fn run_example() -> Result<String, Box<dyn std::error::Error>> {
    let planted = planted_instance(&[5, 4, 4, 3], 3, 2)?;
    let k = 4;
    let params = Params::new(1, 2, 2, Some(k))?;
    let inst = AnnotatedInstance::build(&planted.graph, params, &Overrides::default())?;
    let (outcome, trace) = reduce(inst);
    let mut out = format!(
        "{} vertices, {} edges\n",
        planted.graph.n(),
        planted.graph.m()
    );
    let mut per_rule = std::collections::BTreeMap::new();
    for entry in &trace {
        *per_rule.entry(entry.rule).or_insert(0) += 1;
    }
    for (rule, count) in &per_rule {
        writeln!(out, "  rule {rule}: {count} actions")?;
    }
    for entry in trace
        .iter()
        .filter(|t| matches!(t.action, Action::Add(..) | Action::Delete(..)))
    {
        writeln!(out, "  {entry}")?;
    }
    match outcome {
        ReductionOutcome::NoInstance(reason) => writeln!(out, "no-instance: {reason}")?,
        ReductionOutcome::Reduced(r) => {
            let ks = KernelStats::of(&r, Some(k));
            writeln!(
                out,
                "charged {} edits, residual budget {:?}",
                r.edit_log().len(),
                r.residual_k()
            )?;
            writeln!(
                out,
                "kernel: {} vertices (bound {:?})",
                ks.vertices, ks.vertex_bound
            )?;
            writeln!(
                out,
                "kernel: {} edges (bound {:?})",
                ks.edges, ks.edge_bound
            )?;
            writeln!(
                out,
                "max degree {} (bound {})",
                ks.max_degree, ks.degree_bound
            )?;
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", run_example()?);
    Ok(())
}
