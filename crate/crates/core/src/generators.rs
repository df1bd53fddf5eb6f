//! Instance builders: the clause and variable gadgets, the reduction from
//! positive 1-in-3-SAT to (2,1)-cluster editing, and seeded random instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{AnnotatedInstance, Edit, EditKind, Graph, Overrides, Params};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormulaError {
    #[error("clause {0} repeats a variable")]
    RepeatedVariable(usize),
    #[error("clause {clause} uses variable {var} but there are only {num_vars}")]
    UnknownVariable {
        clause: usize,
        var: usize,
        num_vars: usize,
    },
    #[error("variable {0} occurs in more than four clauses")]
    TooManyOccurrences(usize),
}

/// Positive 3-CNF: each clause is three distinct variables, each variable in
/// at most four clauses.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Formula {
    num_vars: usize,
    clauses: Vec<[usize; 3]>,
}

impl Formula {
    pub fn new(num_vars: usize, clauses: Vec<[usize; 3]>) -> Result<Self, FormulaError> {
        let f = Formula { num_vars, clauses };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), FormulaError> {
        let mut occurrences = vec![0usize; self.num_vars];
        for (ci, clause) in self.clauses.iter().enumerate() {
            if clause[0] == clause[1] || clause[1] == clause[2] || clause[0] == clause[2] {
                return Err(FormulaError::RepeatedVariable(ci));
            }
            for &var in clause {
                if var >= self.num_vars {
                    return Err(FormulaError::UnknownVariable {
                        clause: ci,
                        var,
                        num_vars: self.num_vars,
                    });
                }
                occurrences[var] += 1;
                if occurrences[var] > 4 {
                    return Err(FormulaError::TooManyOccurrences(var));
                }
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    pub fn is_one_in_three(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().filter(|&&v| assignment[v]).count() == 1)
    }
}

/// A small labelled graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fragment {
    pub graph: Graph,
    pub labels: Vec<&'static str>,
}

/// Clause gadget vertex ids inside [`clause_gadget`].
pub mod clause {
    pub const K4: [usize; 4] = [0, 1, 2, 3];
    pub const HUB: usize = 4;
    pub const C: usize = 5;
    pub const STUBS: [usize; 3] = [6, 7, 8];
    pub const INTERNAL_VERTICES: usize = 6;
    pub const INTERNAL_EDGES: usize = 8;
}

/// Variable gadget vertex ids inside [`variable_gadget`].
pub mod variable {
    /// Cycle vertices in cyclic order.
    pub const CYCLE: [usize; 4] = [0, 1, 2, 3];
    /// `PENDANTS[i]` hangs off `CYCLE[i]`.
    pub const PENDANTS: [usize; 4] = [4, 5, 6, 7];
}

fn clause_edges(base: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(clause::INTERNAL_EDGES);
    for (i, &u) in clause::K4.iter().enumerate() {
        for &v in &clause::K4[i + 1..] {
            edges.push((base + u, base + v));
        }
    }
    edges.push((base + 3, base + clause::HUB));
    edges.push((base + clause::HUB, base + clause::C));
    edges
}

fn variable_edges(base: usize) -> Vec<(usize, usize)> {
    let cyc = variable::CYCLE;
    let mut edges: Vec<(usize, usize)> = (0..4)
        .map(|i| (base + cyc[i], base + cyc[(i + 1) % 4]))
        .collect();
    for i in 0..4 {
        edges.push((base + cyc[i], base + variable::PENDANTS[i]));
    }
    edges
}

/// `K4` on `{0,1,2,3}`, path `3-4-c` and three pendant stubs on `c`.
pub fn clause_gadget() -> Fragment {
    let mut edges = clause_edges(0);
    edges.extend(clause::STUBS.iter().map(|&x| (clause::C, x)));
    Fragment {
        graph: Graph::new(9, edges).expect("static gadget"),
        labels: vec!["0", "1", "2", "3", "4", "c", "x", "y", "z"],
    }
}

/// `C4` with one pendant occurrence vertex per cycle vertex.
pub fn variable_gadget() -> Fragment {
    Fragment {
        graph: Graph::new(8, variable_edges(0)).expect("static gadget"),
        labels: vec!["1", "2", "3", "4", "x", "x", "x", "x"],
    }
}

/// The (2,1)-cluster editing instance encoding a formula, with the vertex
/// roles needed to interpret its solutions.
#[derive(Clone, Debug)]
pub struct GadgetLayout {
    pub graph: Graph,
    pub instance: AnnotatedInstance,
    /// `var_vertex[x][slot]`: occurrence vertex `slot` of variable `x`.
    pub var_vertex: Vec<[usize; 4]>,
    /// `var_cycle[x]`: cycle vertices of variable `x` in cyclic order.
    pub var_cycle: Vec<[usize; 4]>,
    /// Vertex `c` of each clause.
    pub clause_vertex: Vec<usize>,
    /// Base id of each clause gadget (its `K4` starts there).
    pub clause_base: Vec<usize>,
    /// The three `c`-occurrence edges of each clause, in clause order.
    pub clause_edges: Vec<[(usize, usize); 3]>,
}

pub const SAT_PARAMS: (u32, u32, u32) = (2, 1, 1);

/// One clause gadget per clause followed by one variable gadget per variable;
/// each clause position is wired to the next free occurrence slot of its
/// variable.
pub fn build_sat_reduction(
    formula: &Formula,
    k: Option<u32>,
) -> Result<GadgetLayout, FormulaError> {
    formula.validate()?;
    let m = formula.clauses().len();
    let nv = formula.num_vars();
    let n = 6 * m + 8 * nv;
    let mut edges = Vec::new();
    let var_base = |x: usize| 6 * m + 8 * x;
    let var_vertex: Vec<[usize; 4]> = (0..nv)
        .map(|x| variable::PENDANTS.map(|p| var_base(x) + p))
        .collect();
    let var_cycle: Vec<[usize; 4]> = (0..nv)
        .map(|x| variable::CYCLE.map(|c| var_base(x) + c))
        .collect();
    let mut next_slot = vec![0usize; nv];
    let mut clause_vertex = Vec::with_capacity(m);
    let mut clause_base = Vec::with_capacity(m);
    let mut wired = Vec::with_capacity(m);
    for (ci, clause) in formula.clauses().iter().enumerate() {
        let base = 6 * ci;
        edges.extend(clause_edges(base));
        let c = base + clause::C;
        let stub = clause.map(|x| {
            let slot = next_slot[x];
            next_slot[x] += 1;
            (c, var_vertex[x][slot])
        });
        edges.extend(stub);
        clause_vertex.push(c);
        clause_base.push(base);
        wired.push(stub);
    }
    for x in 0..nv {
        edges.extend(variable_edges(var_base(x)));
    }
    let graph = Graph::new(n, edges).expect("gadget wiring is simple");
    let (a, d, s) = SAT_PARAMS;
    let params = Params::new(a, d, s, k).expect("s = 1");
    let instance =
        AnnotatedInstance::build(&graph, params, &Overrides::default()).expect("uniform budgets");
    Ok(GadgetLayout {
        graph,
        instance,
        var_vertex,
        var_cycle,
        clause_vertex,
        clause_base,
        clause_edges: wired,
    })
}

impl GadgetLayout {
    /// The edit script of the layout induced by a 1-in-3 assignment: each
    /// clause sheds its true occurrence and pulls the two false ones into a
    /// `K4` with its hub; false variables cliquify their cycle and drop all
    /// pendants; true variables split into two `K4`s.
    pub fn canonical_script(&self, formula: &Formula, assignment: &[bool]) -> Vec<Edit> {
        let mut script = Vec::new();
        for (ci, clause) in formula.clauses().iter().enumerate() {
            let base = self.clause_base[ci];
            script.push(Edit::delete(base + 3, base + clause::HUB));
            let mut false_slots = Vec::new();
            for (pos, &x) in clause.iter().enumerate() {
                let (c, slot) = self.clause_edges[ci][pos];
                if assignment[x] {
                    script.push(Edit::delete(c, slot));
                } else {
                    false_slots.push(slot);
                }
            }
            let hub = base + clause::HUB;
            for &slot in &false_slots {
                script.push(Edit::add(hub, slot));
            }
            for (i, &p) in false_slots.iter().enumerate() {
                for &q in &false_slots[i + 1..] {
                    script.push(Edit::add(p, q));
                }
            }
        }
        for x in 0..formula.num_vars() {
            let cyc = self.var_cycle[x];
            let pen = self.var_vertex[x];
            if assignment[x] {
                script.push(Edit::delete(cyc[0], cyc[1]));
                script.push(Edit::delete(cyc[2], cyc[3]));
                for (i, j) in [(0, 3), (1, 2)] {
                    script.push(Edit::add(cyc[i], pen[j]));
                    script.push(Edit::add(cyc[j], pen[i]));
                    script.push(Edit::add(pen[i], pen[j]));
                }
            } else {
                for i in 0..4 {
                    script.push(Edit::delete(cyc[i], pen[i]));
                }
                script.push(Edit::add(cyc[0], cyc[2]));
                script.push(Edit::add(cyc[1], cyc[3]));
            }
        }
        script
    }

    /// Variables whose clause edge was deleted by `script`.
    pub fn recover_assignment(&self, formula: &Formula, script: &[Edit]) -> Vec<bool> {
        let mut assignment = vec![false; formula.num_vars()];
        for (ci, clause) in formula.clauses().iter().enumerate() {
            for (pos, &x) in clause.iter().enumerate() {
                let (c, slot) = self.clause_edges[ci][pos];
                if script.contains(&Edit::new(EditKind::Delete, c, slot)) {
                    assignment[x] = true;
                }
            }
        }
        assignment
    }
}

/// Cost of [`GadgetLayout::canonical_script`]: five edits per clause, six
/// per false variable and eight per true variable.
pub fn canonical_cost(formula: &Formula, assignment: &[bool]) -> usize {
    let trues = assignment.iter().filter(|&&t| t).count();
    5 * formula.clauses().len() + 6 * formula.num_vars() + 2 * trues
}

/// Upper bound on [`canonical_cost`] over all assignments.
pub fn canonical_cost_bound(formula: &Formula) -> usize {
    5 * formula.clauses().len() + 8 * formula.num_vars()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PlantedError {
    #[error("cluster sizes must be at least 1")]
    EmptyCluster,
    #[error("{flips} flips requested but only {pairs} vertex pairs exist")]
    TooManyFlips { flips: usize, pairs: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Planted {
    pub graph: Graph,
    pub partition: Vec<Vec<usize>>,
}

/// Disjoint cliques of the given sizes with `flips` distinct vertex pairs
/// toggled, chosen uniformly from a ChaCha8 stream seeded with `seed`.
pub fn planted_instance(sizes: &[usize], flips: usize, seed: u64) -> Result<Planted, PlantedError> {
    if sizes.contains(&0) {
        return Err(PlantedError::EmptyCluster);
    }
    let n: usize = sizes.iter().sum();
    let pairs = n * n.saturating_sub(1) / 2;
    if flips > pairs {
        return Err(PlantedError::TooManyFlips { flips, pairs });
    }
    let mut partition = Vec::with_capacity(sizes.len());
    let mut label = vec![0usize; n];
    let mut next = 0;
    for (ci, &size) in sizes.iter().enumerate() {
        partition.push((next..next + size).collect::<Vec<_>>());
        label[next..next + size].fill(ci);
        next += size;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flipped = vec![false; pairs];
    if pairs > 0 {
        for i in sample(&mut rng, pairs, flips) {
            flipped[i] = true;
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for u in 0..n {
        for v in u + 1..n {
            if (label[u] == label[v]) != flipped[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Ok(Planted {
        graph: Graph::new(n, edges).expect("generated pairs are simple"),
        partition,
    })
}

/// Erdős–Rényi `G(n, p)` from a ChaCha8 stream seeded with `seed`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("generated pairs are simple")
}
