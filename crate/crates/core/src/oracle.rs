//! Brute-force ground truth.
//!
//! [`oracle_minimum`] checks the problem definition directly against every set
//! partition of the vertices; [`sat_one_in_three`] tries every truth
//! assignment. Neither shares code with the reduction rules or the solvers.

use thiserror::Error;

use crate::generators::{Formula, FormulaError};
use crate::graph::{AnnotatedInstance, Budgets, Graph, PairState, Params};

pub const MAX_ORACLE_VERTICES: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses n = {0} (limit {MAX_ORACLE_VERTICES})")]
    TooLarge(usize),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("oracle refuses {0} variables (limit 20)")]
    TooManyVariables(usize),
}

/// A cluster editing question on at most [`MAX_ORACLE_VERTICES`] vertices,
/// with optional permanent/forbidden annotations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleProblem {
    n: usize,
    adj: Vec<u64>,
    together: Vec<u64>,
    apart: Vec<u64>,
    alpha: Vec<i64>,
    delta: Vec<i64>,
    s: usize,
    k: Option<i64>,
}

impl OracleProblem {
    pub fn new(graph: &Graph, params: &Params) -> Result<Self, OracleError> {
        Self::with_budgets(graph, params, &Budgets::uniform(graph.n(), params))
    }

    pub fn with_budgets(
        graph: &Graph,
        params: &Params,
        budgets: &Budgets,
    ) -> Result<Self, OracleError> {
        let n = graph.n();
        if n > MAX_ORACLE_VERTICES {
            return Err(OracleError::TooLarge(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in graph.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(OracleProblem {
            n,
            adj,
            together: vec![0; n],
            apart: vec![0; n],
            alpha: budgets.alpha.iter().map(|&x| x as i64).collect(),
            delta: budgets.delta.iter().map(|&x| x as i64).collect(),
            s: params.s as usize,
            k: params.k.map(i64::from),
        })
    }

    /// The undecided remainder of an instance: active vertices (relabelled in
    /// ascending order, mapping returned), their pair states and residual
    /// budgets.
    pub fn residual(inst: &AnnotatedInstance) -> Result<(Self, Vec<usize>), OracleError> {
        let verts: Vec<usize> = inst.active_vertices().collect();
        let n = verts.len();
        if n > MAX_ORACLE_VERTICES {
            return Err(OracleError::TooLarge(n));
        }
        let mut p = OracleProblem {
            n,
            adj: vec![0; n],
            together: vec![0; n],
            apart: vec![0; n],
            alpha: verts.iter().map(|&v| inst.alpha(v)).collect(),
            delta: verts.iter().map(|&v| inst.delta(v)).collect(),
            s: inst.params().s as usize,
            k: inst.residual_k(),
        };
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let state = inst.pair_state(verts[i], verts[j]).expect("valid pair");
                if state.is_edge() {
                    p.adj[i] |= 1 << j;
                }
                match state {
                    PairState::PermanentEdge => p.together[i] |= 1 << j,
                    PairState::ForbiddenNonEdge => p.apart[i] |= 1 << j,
                    _ => {}
                }
            }
        }
        Ok((p, verts))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cost of a partition given as block ids per vertex, or `None` if it
    /// violates a constraint.
    fn evaluate(&self, block_of: &[usize], masks: &[u64], sizes: &[usize]) -> Option<i64> {
        if sizes.iter().any(|&sz| sz < self.s) {
            return None;
        }
        let mut total = 0i64;
        for v in 0..self.n {
            let block = masks[block_of[v]];
            let others = block & !(1 << v);
            if self.together[v] & !block != 0 || self.apart[v] & block != 0 {
                return None;
            }
            let adds = (others & !self.adj[v]).count_ones() as i64;
            let dels = (self.adj[v] & !block).count_ones() as i64;
            if adds > self.alpha[v] || dels > self.delta[v] {
                return None;
            }
            total += adds + dels;
        }
        let cost = total / 2;
        match self.k {
            Some(k) if cost > k => None,
            _ => Some(cost),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub min_cost: Option<usize>,
    /// Every partition achieving `min_cost`, blocks sorted, ordered by
    /// enumeration.
    pub witnesses: Vec<Vec<Vec<usize>>>,
}

impl OracleResult {
    pub fn feasible(&self) -> bool {
        self.min_cost.is_some()
    }
}

/// Visits every set partition of `0..n` as a restricted-growth string.
fn for_each_partition(n: usize, mut visit: impl FnMut(&[usize], usize)) {
    if n == 0 {
        visit(&[], 0);
        return;
    }
    let mut rgs = vec![0usize; n];
    // prefix_max[i] = max(rgs[0..i])
    let mut prefix_max = vec![0usize; n];
    loop {
        let blocks = prefix_max[n - 1].max(rgs[n - 1]) + 1;
        visit(&rgs, blocks);
        let mut i = n - 1;
        while i > 0 && rgs[i] > prefix_max[i] {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        rgs[i] += 1;
        for j in i + 1..n {
            rgs[j] = 0;
            prefix_max[j] = prefix_max[j - 1].max(rgs[j - 1]);
        }
    }
}

pub fn oracle_minimum(problem: &OracleProblem) -> OracleResult {
    let n = problem.n;
    let mut best: Option<i64> = None;
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    let mut masks = vec![0u64; n.max(1)];
    let mut sizes = vec![0usize; n.max(1)];
    for_each_partition(n, |rgs, blocks| {
        masks[..blocks].fill(0);
        sizes[..blocks].fill(0);
        for (v, &b) in rgs.iter().enumerate() {
            masks[b] |= 1 << v;
            sizes[b] += 1;
        }
        if let Some(cost) = problem.evaluate(rgs, &masks[..blocks], &sizes[..blocks]) {
            match best {
                Some(b) if cost > b => {}
                Some(b) if cost == b => witnesses.push(rgs.to_vec()),
                _ => {
                    best = Some(cost);
                    witnesses.clear();
                    witnesses.push(rgs.to_vec());
                }
            }
        }
    });
    OracleResult {
        min_cost: best.map(|c| c as usize),
        witnesses: witnesses.iter().map(|rgs| blocks_of(rgs)).collect(),
    }
}

fn blocks_of(rgs: &[usize]) -> Vec<Vec<usize>> {
    let count = rgs.iter().max().map_or(0, |m| m + 1);
    let mut blocks = vec![Vec::new(); count];
    for (v, &b) in rgs.iter().enumerate() {
        blocks[b].push(v);
    }
    blocks
}

/// Convenience: oracle on a plain graph with uniform budgets.
pub fn oracle_for_graph(graph: &Graph, params: &Params) -> Result<OracleResult, OracleError> {
    Ok(oracle_minimum(&OracleProblem::new(graph, params)?))
}

/// Every feasible partition with its cost (not only the optimal ones).
pub fn feasible_partitions(problem: &OracleProblem) -> Vec<(usize, Vec<Vec<usize>>)> {
    let n = problem.n;
    let mut out = Vec::new();
    let mut masks = vec![0u64; n.max(1)];
    let mut sizes = vec![0usize; n.max(1)];
    for_each_partition(n, |rgs, blocks| {
        masks[..blocks].fill(0);
        sizes[..blocks].fill(0);
        for (v, &b) in rgs.iter().enumerate() {
            masks[b] |= 1 << v;
            sizes[b] += 1;
        }
        if let Some(cost) = problem.evaluate(rgs, &masks[..blocks], &sizes[..blocks]) {
            out.push((cost as usize, blocks_of(rgs)));
        }
    });
    out
}

/// Lexicographically first (true before false, variable 0 first) assignment
/// with exactly one true variable per clause.
pub fn sat_one_in_three(formula: &Formula) -> Result<Option<Vec<bool>>, OracleError> {
    formula.validate()?;
    let nv = formula.num_vars();
    if nv > 20 {
        return Err(OracleError::TooManyVariables(nv));
    }
    for code in 0u32..(1 << nv) {
        // bit (nv-1-i) clear means variable i is true
        let assignment: Vec<bool> = (0..nv).map(|i| code >> (nv - 1 - i) & 1 == 0).collect();
        if formula.is_one_in_three(&assignment) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}
