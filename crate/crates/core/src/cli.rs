//! Command-line front end. Exit codes: 0 yes/success, 1 no-instance or
//! invalid solution, 2 usage or parse error.

use std::fmt::Write as _;
use std::io::{Read, Write};

use clap::{Args, Parser, Subcommand};

use crate::format::{
    parse_instance, parse_solution, serialize_instance, serialize_solution, InstanceFile,
};
use crate::generators::{
    build_sat_reduction, canonical_cost_bound, clause_gadget, planted_instance, variable_gadget,
    Formula, SAT_PARAMS,
};
use crate::graph::{
    validate_with_budgets, AnnotatedInstance, Budgets, Edit, Graph, Overrides, PairState, Params,
    Solution,
};
use crate::oracle::{oracle_minimum, OracleProblem, MAX_ORACLE_VERTICES};
use crate::reduction::{reduce, KernelStats, ReductionOutcome};
use crate::solver::{solve, Mode};

#[derive(Parser, Debug)]
#[command(
    name = "mpce",
    about = "Cluster editing with per-vertex budgets and a minimum cluster size"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct ParamArgs {
    /// Additions allowed per vertex
    #[arg(long = "add", value_name = "A")]
    a: u32,
    /// Deletions allowed per vertex
    #[arg(long = "delete", value_name = "D")]
    d: u32,
    /// Minimum cluster size
    #[arg(long = "min-size", value_name = "S")]
    s: u32,
    /// Global edit budget; omit to minimize
    #[arg(long = "budget", value_name = "K")]
    k: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve an instance file (`-` reads stdin)
    Solve {
        instance: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "auto", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Run the reduction rules to a fixpoint
    Reduce {
        instance: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Brute-force minimum over all partitions (small instances only)
    Oracle {
        instance: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Check a solution file against an instance
    Verify {
        instance: String,
        solution: String,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Write a generated instance to stdout
    Generate {
        #[command(subcommand)]
        kind: Generator,
    },
    /// Structural summary of an instance
    Stats { instance: String },
}

#[derive(Subcommand, Debug)]
enum Generator {
    /// Reduction of a positive 1-in-3-SAT formula, e.g. `--formula "0,1,2;0,1,3"`
    Sat {
        #[arg(long)]
        formula: String,
        /// Number of variables (default: largest index + 1)
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Disjoint cliques with random pair flips
    Planted {
        /// Comma-separated cluster sizes
        #[arg(long)]
        sizes: String,
        #[arg(long, default_value_t = 0)]
        flips: usize,
        #[arg(long)]
        seed: u64,
    },
    ClauseGadget,
    VariableGadget,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_source(path: &str) -> Result<String, Failure> {
    let mut text = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    res.map_err(|e| usage(format!("{path}: {e}")))?;
    Ok(text)
}

fn load(path: &str) -> Result<InstanceFile, Failure> {
    let text = read_source(path)?;
    parse_instance(&text).map_err(|e| usage(format!("{path}: {e}")))
}

fn params_of(p: ParamArgs) -> Result<Params, Failure> {
    Params::new(p.a, p.d, p.s, p.k).map_err(|e| usage(e.to_string()))
}

fn instance_of(file: &InstanceFile, p: ParamArgs) -> Result<(AnnotatedInstance, Params), Failure> {
    let params = params_of(p)?;
    let inst = AnnotatedInstance::build(&file.graph, params, &file.overrides)
        .map_err(|e| usage(e.to_string()))?;
    Ok((inst, params))
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut stdout = String::new();
    let mut stderr = String::new();
    let code = match dispatch(cli.command, &mut stdout, &mut stderr) {
        Ok(code) => code,
        Err(f) => {
            writeln!(stderr, "error: {}", f.message).unwrap();
            f.code
        }
    };
    let _ = out.write_all(stdout.as_bytes());
    let _ = err.write_all(stderr.as_bytes());
    code
}

fn dispatch(cmd: Command, out: &mut String, err: &mut String) -> Result<i32, Failure> {
    match cmd {
        Command::Solve {
            instance,
            params,
            mode,
        } => cmd_solve(&instance, params, mode, out, err),
        Command::Reduce { instance, params } => cmd_reduce(&instance, params, out, err),
        Command::Oracle { instance, params } => cmd_oracle(&instance, params, out, err),
        Command::Verify {
            instance,
            solution,
            params,
        } => cmd_verify(&instance, &solution, params, out),
        Command::Generate { kind } => cmd_generate(kind, out),
        Command::Stats { instance } => cmd_stats(&instance, out),
    }
}

fn verdict_code(sol: &Solution) -> i32 {
    if sol.is_yes() {
        0
    } else {
        1
    }
}

fn cmd_solve(
    path: &str,
    p: ParamArgs,
    mode: Mode,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let file = load(path)?;
    let (inst, _) = instance_of(&file, p)?;
    let (sol, stats) = solve(inst, mode).map_err(|e| usage(e.to_string()))?;
    out.push_str(&serialize_solution(&sol));
    writeln!(
        err,
        "c nodes {} reductions {} branch-free {}",
        stats.nodes_expanded, stats.reductions_applied, stats.branch_free
    )
    .unwrap();
    Ok(verdict_code(&sol))
}

fn cmd_reduce(
    path: &str,
    p: ParamArgs,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let file = load(path)?;
    let (inst, params) = instance_of(&file, p)?;
    let (outcome, trace) = reduce(inst);
    for entry in &trace {
        writeln!(err, "{entry}").unwrap();
    }
    let reduced = match outcome {
        ReductionOutcome::Reduced(r) => r,
        ReductionOutcome::NoInstance(reason) => {
            writeln!(out, "s no {reason}").unwrap();
            return Ok(1);
        }
    };
    let ks = KernelStats::of(&reduced, params.k);
    let bound = |b: Option<u64>| b.map_or("-".to_string(), |b| b.to_string());
    writeln!(
        err,
        "c kernel vertices {} bound {}",
        ks.vertices,
        bound(ks.vertex_bound)
    )
    .unwrap();
    writeln!(
        err,
        "c kernel edges {} bound {}",
        ks.edges,
        bound(ks.edge_bound)
    )
    .unwrap();
    writeln!(
        err,
        "c kernel max-degree {} bound {}",
        ks.max_degree, ks.degree_bound
    )
    .unwrap();
    out.push_str(&render_reduced(&reduced, &params));
    Ok(0)
}

/// The reduced state as an instance file over the original ids, with the
/// annotations as comments and residual budgets as override lines.
fn render_reduced(inst: &AnnotatedInstance, params: &Params) -> String {
    let mut text = String::new();
    if let Some(k) = inst.residual_k() {
        writeln!(text, "c budget {k}").unwrap();
    }
    for e in inst.edit_log() {
        writeln!(text, "c charged {e}").unwrap();
    }
    for c in inst.removed_clusters() {
        let members: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        writeln!(text, "c removed {}", members.join(" ")).unwrap();
    }
    let verts: Vec<usize> = inst.active_vertices().collect();
    for (i, &u) in verts.iter().enumerate() {
        for &v in &verts[i + 1..] {
            match inst.state(u, v) {
                PairState::PermanentEdge => writeln!(text, "c permanent {u} {v}").unwrap(),
                PairState::ForbiddenNonEdge => writeln!(text, "c forbidden {u} {v}").unwrap(),
                _ => {}
            }
        }
    }
    let mut edges = Vec::new();
    let mut overrides = Overrides::default();
    for u in 0..inst.n() {
        for v in inst.neighbors(u).iter().filter(|&v| v > u) {
            edges.push((u, v));
        }
        if inst.is_active(u) {
            let (a, d) = (inst.alpha(u) as u32, inst.delta(u) as u32);
            if a != params.a {
                overrides.alpha.insert(u, a);
            }
            if d != params.d {
                overrides.delta.insert(u, d);
            }
        }
    }
    let graph = Graph::new(inst.n(), edges).expect("reduced graph is simple");
    text.push_str(&serialize_instance(&graph, &overrides));
    text
}

fn partition_solution(graph: &Graph, blocks: Vec<Vec<usize>>) -> Solution {
    let n = graph.n();
    let mut block_of = vec![0; n];
    for (b, members) in blocks.iter().enumerate() {
        for &v in members {
            block_of[v] = b;
        }
    }
    let adj = graph.adjacency();
    let mut script = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            match (adj[u].contains(v), block_of[u] == block_of[v]) {
                (true, false) => script.push(Edit::delete(u, v)),
                (false, true) => script.push(Edit::add(u, v)),
                _ => {}
            }
        }
    }
    Solution::Yes {
        script,
        clusters: blocks,
    }
}

fn cmd_oracle(
    path: &str,
    p: ParamArgs,
    out: &mut String,
    err: &mut String,
) -> Result<i32, Failure> {
    let file = load(path)?;
    let params = params_of(p)?;
    let budgets = Budgets::resolve(file.graph.n(), &params, &file.overrides)
        .map_err(|e| usage(e.to_string()))?;
    let problem = OracleProblem::with_budgets(&file.graph, &params, &budgets)
        .map_err(|e| usage(e.to_string()))?;
    let result = oracle_minimum(&problem);
    writeln!(err, "c witnesses {}", result.witnesses.len()).unwrap();
    let sol = match result.witnesses.into_iter().next() {
        Some(blocks) => partition_solution(&file.graph, blocks),
        None => Solution::No {
            reason: crate::graph::NoReason::Exhausted,
        },
    };
    out.push_str(&serialize_solution(&sol));
    Ok(verdict_code(&sol))
}

fn cmd_verify(
    instance: &str,
    solution: &str,
    p: ParamArgs,
    out: &mut String,
) -> Result<i32, Failure> {
    let file = load(instance)?;
    let params = params_of(p)?;
    let budgets = Budgets::resolve(file.graph.n(), &params, &file.overrides)
        .map_err(|e| usage(e.to_string()))?;
    let text = read_source(solution)?;
    let sol = parse_solution(&text).map_err(|e| usage(format!("{solution}: {e}")))?;
    match sol {
        Solution::Yes { script, clusters } => {
            match validate_with_budgets(&file.graph, &script, &params, &budgets) {
                Err(v) => {
                    writeln!(out, "invalid: {v}").unwrap();
                    Ok(1)
                }
                Ok(actual) => {
                    let mut listed: Vec<Vec<usize>> = clusters
                        .into_iter()
                        .map(|mut c| {
                            c.sort_unstable();
                            c
                        })
                        .collect();
                    listed.sort();
                    if listed != actual {
                        writeln!(out, "invalid: cluster lines do not match the edited graph")
                            .unwrap();
                        return Ok(1);
                    }
                    writeln!(
                        out,
                        "valid: {} edits, {} clusters",
                        script.len(),
                        actual.len()
                    )
                    .unwrap();
                    Ok(0)
                }
            }
        }
        Solution::No { reason } => {
            if file.graph.n() > MAX_ORACLE_VERTICES {
                writeln!(
                    out,
                    "unverified: no-instance claim ({reason}) on n > {MAX_ORACLE_VERTICES}"
                )
                .unwrap();
                return Ok(1);
            }
            let problem = OracleProblem::with_budgets(&file.graph, &params, &budgets)
                .map_err(|e| usage(e.to_string()))?;
            match oracle_minimum(&problem).min_cost {
                None => {
                    writeln!(out, "valid: no solution exists").unwrap();
                    Ok(0)
                }
                Some(c) => {
                    writeln!(out, "invalid: a solution with {c} edits exists").unwrap();
                    Ok(1)
                }
            }
        }
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad number `{t}` in `{s}`")))
        })
        .collect()
}

fn parse_formula(text: &str, vars: Option<usize>) -> Result<Formula, Failure> {
    let mut clauses = Vec::new();
    for part in text.split(';').filter(|p| !p.trim().is_empty()) {
        let lits = parse_list(part)?;
        let clause: [usize; 3] = lits
            .try_into()
            .map_err(|_| usage(format!("clause `{part}` needs exactly three variables")))?;
        clauses.push(clause);
    }
    let nv = vars.unwrap_or_else(|| clauses.iter().flatten().max().map_or(0, |m| m + 1));
    Formula::new(nv, clauses).map_err(|e| usage(e.to_string()))
}

fn cmd_generate(kind: Generator, out: &mut String) -> Result<i32, Failure> {
    let none = Overrides::default();
    match kind {
        Generator::Sat { formula, vars } => {
            let f = parse_formula(&formula, vars)?;
            let layout = build_sat_reduction(&f, None).map_err(|e| usage(e.to_string()))?;
            let (a, d, s) = SAT_PARAMS;
            writeln!(
                out,
                "c 1-in-3 reduction, solve with --add {a} --delete {d} --min-size {s}"
            )
            .unwrap();
            writeln!(
                out,
                "c canonical layout cost at most {}",
                canonical_cost_bound(&f)
            )
            .unwrap();
            for (ci, clause) in f.clauses().iter().enumerate() {
                let stubs: Vec<String> = layout.clause_edges[ci]
                    .iter()
                    .map(|(c, x)| format!("{c}-{x}"))
                    .collect();
                writeln!(
                    out,
                    "c clause {ci} ({} {} {}): {}",
                    clause[0],
                    clause[1],
                    clause[2],
                    stubs.join(" ")
                )
                .unwrap();
            }
            for (x, cyc) in layout.var_cycle.iter().enumerate() {
                writeln!(
                    out,
                    "c variable {x}: cycle {:?} slots {:?}",
                    cyc, layout.var_vertex[x]
                )
                .unwrap();
            }
            out.push_str(&serialize_instance(&layout.graph, &none));
        }
        Generator::Planted { sizes, flips, seed } => {
            let sizes = parse_list(&sizes)?;
            let planted =
                planted_instance(&sizes, flips, seed).map_err(|e| usage(e.to_string()))?;
            for block in &planted.partition {
                let members: Vec<String> = block.iter().map(|v| v.to_string()).collect();
                writeln!(out, "c planted {}", members.join(" ")).unwrap();
            }
            out.push_str(&serialize_instance(&planted.graph, &none));
        }
        Generator::ClauseGadget => out.push_str(&serialize_instance(&clause_gadget().graph, &none)),
        Generator::VariableGadget => {
            out.push_str(&serialize_instance(&variable_gadget().graph, &none))
        }
    }
    Ok(0)
}

fn cmd_stats(path: &str, out: &mut String) -> Result<i32, Failure> {
    let file = load(path)?;
    let g = &file.graph;
    let adj = g.adjacency();
    let degrees: Vec<usize> = adj.iter().map(|row| row.count()).collect();
    let inst = AnnotatedInstance::with_budgets(
        g,
        Params::new(0, 0, 1, None).expect("s = 1"),
        Budgets {
            alpha: vec![0; g.n()],
            delta: vec![0; g.n()],
        },
    );
    let (comps, cluster_graph) = inst.components();
    let mut triples = 0usize;
    for row in &adj {
        let nbrs: Vec<usize> = row.iter().collect();
        for (i, &v) in nbrs.iter().enumerate() {
            triples += nbrs[i + 1..]
                .iter()
                .filter(|&&w| !adj[v].contains(w))
                .count();
        }
    }
    writeln!(out, "n {}", g.n()).unwrap();
    writeln!(out, "m {}", g.m()).unwrap();
    writeln!(
        out,
        "min-degree {}",
        degrees.iter().min().copied().unwrap_or(0)
    )
    .unwrap();
    writeln!(
        out,
        "max-degree {}",
        degrees.iter().max().copied().unwrap_or(0)
    )
    .unwrap();
    writeln!(out, "components {}", comps.len()).unwrap();
    writeln!(
        out,
        "largest-component {}",
        comps.iter().map(Vec::len).max().unwrap_or(0)
    )
    .unwrap();
    writeln!(
        out,
        "cluster-graph {}",
        if cluster_graph { "yes" } else { "no" }
    )
    .unwrap();
    writeln!(out, "conflict-triples {triples}").unwrap();
    Ok(0)
}
