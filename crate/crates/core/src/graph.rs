//! Annotated instances: vertex pairs with decided/undecided states, per-vertex
//! edit budgets and the log of edits charged so far.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::bits::BitSet;

/// Problem parameters: per-vertex addition bound `a`, per-vertex deletion
/// bound `d`, minimum cluster size `s` and an optional global edit budget `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub a: u32,
    pub d: u32,
    pub s: u32,
    pub k: Option<u32>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("minimum cluster size must be at least 1")]
    ZeroClusterSize,
}

impl Params {
    pub fn new(a: u32, d: u32, s: u32, k: Option<u32>) -> Result<Self, ParamsError> {
        if s == 0 {
            return Err(ParamsError::ZeroClusterSize);
        }
        Ok(Params { a, d, s, k })
    }

    /// Optimization-mode parameters (no global budget).
    pub fn unbounded(a: u32, d: u32, s: u32) -> Result<Self, ParamsError> {
        Self::new(a, d, s, None)
    }

    pub fn with_budget(self, k: u32) -> Self {
        Params { k: Some(k), ..self }
    }

    pub fn without_budget(self) -> Self {
        Params { k: None, ..self }
    }

    /// `max(a, 2d)`, the size above which an isolated clique can never change.
    pub fn clique_cap(&self) -> u32 {
        self.a.max(2 * self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairState {
    NonEdge,
    ForbiddenNonEdge,
    Edge,
    PermanentEdge,
}

impl PairState {
    pub fn is_edge(self) -> bool {
        matches!(self, PairState::Edge | PairState::PermanentEdge)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EditKind {
    Add,
    Delete,
}

/// A single edge addition or deletion. Endpoints are stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edit {
    pub kind: EditKind,
    u: usize,
    v: usize,
}

impl Edit {
    pub fn new(kind: EditKind, u: usize, v: usize) -> Self {
        assert_ne!(u, v, "edit endpoints must be distinct");
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        Edit { kind, u, v }
    }

    pub fn add(u: usize, v: usize) -> Self {
        Self::new(EditKind::Add, u, v)
    }

    pub fn delete(u: usize, v: usize) -> Self {
        Self::new(EditKind::Delete, u, v)
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

impl fmt::Display for Edit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let word = match self.kind {
            EditKind::Add => "add",
            EditKind::Delete => "del",
        };
        write!(f, "{} {} {}", word, self.u, self.v)
    }
}

/// Why an instance was rejected.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NoReason {
    /// A reduction rule (1..=17) detected infeasibility.
    Rule(u8),
    /// The search tree was exhausted without reaching a valid cluster graph.
    Exhausted,
    /// A fully decided graph still has a cluster below the minimum size.
    SmallCluster,
    /// A reduced `(0,1)` instance kept a vertex of degree three or more.
    DegreeThree,
    /// No matching of a path or cycle component respects the budgets.
    Unmatchable,
    /// The cheapest (0,1) solution exceeds the global budget.
    OverBudget,
}

impl fmt::Display for NoReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoReason::Rule(r) => write!(f, "rule{r}"),
            NoReason::Exhausted => f.write_str("exhausted"),
            NoReason::SmallCluster => f.write_str("small-cluster"),
            NoReason::DegreeThree => f.write_str("degree-three"),
            NoReason::Unmatchable => f.write_str("unmatchable"),
            NoReason::OverBudget => f.write_str("over-budget"),
        }
    }
}

impl std::str::FromStr for NoReason {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "exhausted" => NoReason::Exhausted,
            "small-cluster" => NoReason::SmallCluster,
            "degree-three" => NoReason::DegreeThree,
            "unmatchable" => NoReason::Unmatchable,
            "over-budget" => NoReason::OverBudget,
            _ => match s.strip_prefix("rule").and_then(|r| r.parse::<u8>().ok()) {
                Some(r) if (1..=17).contains(&r) => NoReason::Rule(r),
                _ => return Err(format!("unknown reason tag `{s}`")),
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Yes {
        script: Vec<Edit>,
        clusters: Vec<Vec<usize>>,
    },
    No {
        reason: NoReason,
    },
}

impl Solution {
    pub fn is_yes(&self) -> bool {
        matches!(self, Solution::Yes { .. })
    }

    pub fn cost(&self) -> Option<usize> {
        match self {
            Solution::Yes { script, .. } => Some(script.len()),
            Solution::No { .. } => None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {v} out of range for n = {n}")]
    OutOfRange { v: usize, n: usize },
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("addition override {value} at vertex {v} exceeds a = {max}")]
    AlphaOverride { v: usize, value: u32, max: u32 },
    #[error("deletion override {value} at vertex {v} exceeds d = {max}")]
    DeltaOverride { v: usize, value: u32, max: u32 },
}

/// A plain simple graph with sorted, normalized edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, BuildError> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u == v {
                return Err(BuildError::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(BuildError::OutOfRange { v: x, n });
                }
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(BuildError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Graph { n, edges: norm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacency(&self) -> Vec<BitSet> {
        let mut rows = vec![BitSet::new(self.n); self.n];
        for &(u, v) in &self.edges {
            rows[u].insert(v);
            rows[v].insert(u);
        }
        rows
    }
}

/// Per-vertex budget overrides; vertices not listed get the global `a`/`d`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub alpha: BTreeMap<usize, u32>,
    pub delta: BTreeMap<usize, u32>,
}

/// Starting budgets `α(v)` and `δ(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budgets {
    pub alpha: Vec<u32>,
    pub delta: Vec<u32>,
}

impl Budgets {
    pub fn uniform(n: usize, params: &Params) -> Self {
        Budgets {
            alpha: vec![params.a; n],
            delta: vec![params.d; n],
        }
    }

    pub fn resolve(n: usize, params: &Params, overrides: &Overrides) -> Result<Self, BuildError> {
        let mut budgets = Self::uniform(n, params);
        for (&v, &value) in &overrides.alpha {
            if v >= n {
                return Err(BuildError::OutOfRange { v, n });
            }
            if value > params.a {
                return Err(BuildError::AlphaOverride {
                    v,
                    value,
                    max: params.a,
                });
            }
            budgets.alpha[v] = value;
        }
        for (&v, &value) in &overrides.delta {
            if v >= n {
                return Err(BuildError::OutOfRange { v, n });
            }
            if value > params.d {
                return Err(BuildError::DeltaOverride {
                    v,
                    value,
                    max: params.d,
                });
            }
            budgets.delta[v] = value;
        }
        Ok(budgets)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PairError {
    #[error("pair ({0}, {0}) is not a vertex pair")]
    SameVertex(usize),
    #[error("vertex {v} out of range for n = {n}")]
    OutOfRange { v: usize, n: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EditError {
    #[error("cannot apply `{edit}` to a pair in state {state:?}")]
    Precondition { edit: Edit, state: PairState },
    #[error("no-instance ({0})")]
    NoInstance(NoReason),
}

/// Graph plus pair annotations, residual budgets and the edit log.
///
/// Pairs are stored densely as three bit matrices: current adjacency,
/// permanence (subset of adjacency) and forbiddance (disjoint from adjacency).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnotatedInstance {
    n: usize,
    params: Params,
    adj: Vec<BitSet>,
    perm: Vec<BitSet>,
    forb: Vec<BitSet>,
    initial: Budgets,
    alpha: Vec<i64>,
    delta: Vec<i64>,
    delta_capped: Vec<i64>,
    residual_k: Option<i64>,
    edit_log: Vec<Edit>,
    active: BitSet,
    removed_clusters: Vec<Vec<usize>>,
}

impl AnnotatedInstance {
    pub fn build(graph: &Graph, params: Params, overrides: &Overrides) -> Result<Self, BuildError> {
        let budgets = Budgets::resolve(graph.n(), &params, overrides)?;
        Ok(Self::with_budgets(graph, params, budgets))
    }

    pub fn with_budgets(graph: &Graph, params: Params, budgets: Budgets) -> Self {
        let n = graph.n();
        assert_eq!(budgets.alpha.len(), n);
        assert_eq!(budgets.delta.len(), n);
        AnnotatedInstance {
            n,
            params,
            adj: graph.adjacency(),
            perm: vec![BitSet::new(n); n],
            forb: vec![BitSet::new(n); n],
            alpha: budgets.alpha.iter().map(|&x| x as i64).collect(),
            delta: budgets.delta.iter().map(|&x| x as i64).collect(),
            initial: budgets,
            delta_capped: vec![0; n],
            residual_k: params.k.map(i64::from),
            edit_log: Vec::new(),
            active: BitSet::full(n),
            removed_clusters: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn initial_budgets(&self) -> &Budgets {
        &self.initial
    }

    pub fn alpha(&self, v: usize) -> i64 {
        self.alpha[v]
    }

    pub fn delta(&self, v: usize) -> i64 {
        self.delta[v]
    }

    pub fn residual_k(&self) -> Option<i64> {
        self.residual_k
    }

    pub fn edit_log(&self) -> &[Edit] {
        &self.edit_log
    }

    pub fn removed_clusters(&self) -> &[Vec<usize>] {
        &self.removed_clusters
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.active.contains(v)
    }

    pub fn active(&self) -> &BitSet {
        &self.active
    }

    pub fn active_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.active.iter()
    }

    pub fn active_count(&self) -> usize {
        self.active.count()
    }

    /// Current neighborhood (edges and permanent edges).
    pub fn neighbors(&self, v: usize) -> &BitSet {
        &self.adj[v]
    }

    pub fn permanent_neighbors(&self, v: usize) -> &BitSet {
        &self.perm[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count()
    }

    pub fn common_neighbors(&self, u: usize, v: usize) -> usize {
        self.adj[u].and_count(&self.adj[v])
    }

    /// Number of edges among active vertices.
    pub fn active_edge_count(&self) -> usize {
        self.active_vertices()
            .map(|v| self.degree(v))
            .sum::<usize>()
            / 2
    }

    pub fn max_active_degree(&self) -> usize {
        self.active_vertices()
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    #[inline]
    pub(crate) fn state(&self, u: usize, v: usize) -> PairState {
        if self.adj[u].contains(v) {
            if self.perm[u].contains(v) {
                PairState::PermanentEdge
            } else {
                PairState::Edge
            }
        } else if self.forb[u].contains(v) {
            PairState::ForbiddenNonEdge
        } else {
            PairState::NonEdge
        }
    }

    pub fn pair_state(&self, u: usize, v: usize) -> Result<PairState, PairError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(PairError::OutOfRange { v: x, n: self.n });
            }
        }
        if u == v {
            return Err(PairError::SameVertex(u));
        }
        Ok(self.state(u, v))
    }

    /// Charges an edit. Additions become permanent and deletions forbidden.
    /// On a returned [`EditError::NoInstance`] the instance must be discarded.
    pub fn apply_edit(&mut self, edit: Edit) -> Result<(), EditError> {
        let (u, v) = edit.endpoints();
        let state = self.state(u, v);
        match (edit.kind, state) {
            (EditKind::Add, PairState::NonEdge) => {
                self.alpha[u] -= 1;
                self.alpha[v] -= 1;
                self.adj[u].insert(v);
                self.adj[v].insert(u);
                self.set_perm_bits(u, v);
            }
            (EditKind::Delete, PairState::Edge) => {
                self.delta[u] -= 1;
                self.delta[v] -= 1;
                self.adj[u].remove(v);
                self.adj[v].remove(u);
                self.forb[u].insert(v);
                self.forb[v].insert(u);
            }
            (EditKind::Delete, PairState::PermanentEdge) => {
                return Err(EditError::NoInstance(NoReason::Rule(1)));
            }
            _ => return Err(EditError::Precondition { edit, state }),
        }
        if let Some(k) = self.residual_k.as_mut() {
            *k -= 1;
        }
        self.edit_log.push(edit);
        if self.has_negative_budget() {
            return Err(EditError::NoInstance(NoReason::Rule(1)));
        }
        Ok(())
    }

    pub fn has_negative_budget(&self) -> bool {
        self.residual_k.is_some_and(|k| k < 0)
            || self.alpha.iter().any(|&x| x < 0)
            || self.delta.iter().any(|&x| x < 0)
    }

    fn set_perm_bits(&mut self, u: usize, v: usize) {
        self.perm[u].insert(v);
        self.perm[v].insert(u);
    }

    /// Marks an existing edge permanent (no charge).
    pub(crate) fn make_permanent(&mut self, u: usize, v: usize) {
        debug_assert_eq!(self.state(u, v), PairState::Edge);
        self.set_perm_bits(u, v);
    }

    /// Marks a non-edge forbidden (no charge).
    pub(crate) fn forbid(&mut self, u: usize, v: usize) {
        debug_assert_eq!(self.state(u, v), PairState::NonEdge);
        self.forb[u].insert(v);
        self.forb[v].insert(u);
    }

    pub(crate) fn cap_delta(&mut self, v: usize, to: i64) {
        debug_assert!(to < self.delta[v]);
        self.delta_capped[v] += self.delta[v] - to;
        self.delta[v] = to;
    }

    /// Finalizes an isolated set of vertices as a cluster.
    pub(crate) fn remove_cluster(&mut self, mut cluster: Vec<usize>) {
        cluster.sort_unstable();
        for &v in &cluster {
            self.active.remove(v);
        }
        self.removed_clusters.push(cluster);
    }

    /// The same state under a different global budget; edits already charged
    /// count against it.
    pub fn with_global_budget(&self, k: Option<u32>) -> Self {
        let mut out = self.clone();
        out.params.k = k;
        out.residual_k = k.map(|k| k as i64 - self.edit_log.len() as i64);
        out
    }

    /// Overwrites the residual global budget without bookkeeping. Only meant
    /// for constructing corrupted states in tests.
    #[doc(hidden)]
    pub fn inject_residual_k(&mut self, k: Option<i64>) {
        self.residual_k = k;
    }

    /// Overwrites the residual budgets of `v` without bookkeeping.
    #[doc(hidden)]
    pub fn inject_budgets(&mut self, v: usize, alpha: i64, delta: i64) {
        self.alpha[v] = alpha;
        self.delta[v] = delta;
    }

    /// Lexicographically smallest `(u, v, w)` with `uv`, `uw` edges and `vw`
    /// a non-edge, `v < w`, over active vertices.
    pub fn find_conflict_triple(&self) -> Option<(usize, usize, usize)> {
        for u in self.active_vertices() {
            let nbrs: Vec<usize> = self.adj[u].iter().collect();
            for (i, &v) in nbrs.iter().enumerate() {
                for &w in &nbrs[i + 1..] {
                    if !self.adj[v].contains(w) {
                        return Some((u, v, w));
                    }
                }
            }
        }
        None
    }

    /// Connected components over all vertices (sorted, ordered by minimum
    /// member) and whether every component is a clique.
    pub fn components(&self) -> (Vec<Vec<usize>>, bool) {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        let mut cluster_graph = true;
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.adj[x].iter() {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            if comp.iter().any(|&x| self.degree(x) != comp.len() - 1) {
                cluster_graph = false;
            }
            comps.push(comp);
        }
        (comps, cluster_graph)
    }

    /// Components restricted to active vertices.
    pub fn active_components(&self) -> Vec<Vec<usize>> {
        let (comps, _) = self.components();
        comps.into_iter().filter(|c| self.is_active(c[0])).collect()
    }

    /// Builds the final solution from an instance whose current graph is the
    /// solution graph.
    pub fn to_solution(&self) -> Solution {
        let (clusters, _) = self.components();
        Solution::Yes {
            script: self.edit_log.clone(),
            clusters,
        }
    }

    /// Checks edit/budget conservation and annotation consistency.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut adds = vec![0i64; self.n];
        let mut dels = vec![0i64; self.n];
        for e in &self.edit_log {
            let (u, v) = e.endpoints();
            let counts = match e.kind {
                EditKind::Add => &mut adds,
                EditKind::Delete => &mut dels,
            };
            counts[u] += 1;
            counts[v] += 1;
            let state = self.state(u, v);
            match e.kind {
                EditKind::Add if state != PairState::PermanentEdge => {
                    return Err(format!("added pair {u} {v} is {state:?}"));
                }
                EditKind::Delete if state != PairState::ForbiddenNonEdge => {
                    return Err(format!("deleted pair {u} {v} is {state:?}"));
                }
                _ => {}
            }
        }
        for v in 0..self.n {
            if self.initial.alpha[v] as i64 - self.alpha[v] != adds[v] {
                return Err(format!("alpha bookkeeping broken at {v}"));
            }
            if self.initial.delta[v] as i64 - self.delta[v] - self.delta_capped[v] != dels[v] {
                return Err(format!("delta bookkeeping broken at {v}"));
            }
            if self.perm[v].and_not_count(&self.adj[v]) != 0 {
                return Err(format!("permanent non-edge at {v}"));
            }
            if self.forb[v].and_count(&self.adj[v]) != 0 {
                return Err(format!("forbidden edge at {v}"));
            }
            for u in 0..self.n {
                if u != v && self.state(u, v) != self.state(v, u) {
                    return Err(format!("asymmetric pair {u} {v}"));
                }
            }
        }
        if let (Some(k0), Some(k)) = (self.params.k, self.residual_k) {
            if k0 as i64 - k != self.edit_log.len() as i64 {
                return Err("global budget bookkeeping broken".into());
            }
        }
        Ok(())
    }
}

/// Why a proposed edit script is not a valid solution.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("edit `{0}` references a vertex out of range")]
    BadVertex(Edit),
    #[error("pair {0} {1} edited twice")]
    DoubleEdit(usize, usize),
    #[error("`{0}` adds an existing edge")]
    AddOnEdge(Edit),
    #[error("`{0}` deletes a non-edge")]
    DeleteOnNonEdge(Edit),
    #[error("result is not a cluster graph: conflict triple ({0}, {1}, {2})")]
    NotClusterGraph(usize, usize, usize),
    #[error("cluster {0:?} is below the minimum size")]
    ClusterTooSmall(Vec<usize>),
    #[error("addition budget exceeded at vertex {0}")]
    AlphaExceeded(usize),
    #[error("deletion budget exceeded at vertex {0}")]
    DeltaExceeded(usize),
    #[error("{used} edits exceed the global budget {k}")]
    BudgetExceeded { used: usize, k: u32 },
}

pub fn validate_solution(
    graph: &Graph,
    script: &[Edit],
    params: &Params,
) -> Result<Vec<Vec<usize>>, Violation> {
    validate_with_budgets(graph, script, params, &Budgets::uniform(graph.n(), params))
}

/// Checks, in order: clean application, cluster graph, cluster sizes,
/// per-vertex counts, global count. Returns the resulting clusters.
pub fn validate_with_budgets(
    graph: &Graph,
    script: &[Edit],
    params: &Params,
    budgets: &Budgets,
) -> Result<Vec<Vec<usize>>, Violation> {
    let n = graph.n();
    let mut adj = graph.adjacency();
    let mut touched = std::collections::BTreeSet::new();
    let mut adds = vec![0u32; n];
    let mut dels = vec![0u32; n];
    for &e in script {
        let (u, v) = e.endpoints();
        if v >= n {
            return Err(Violation::BadVertex(e));
        }
        if !touched.insert((u, v)) {
            return Err(Violation::DoubleEdit(u, v));
        }
        match e.kind {
            EditKind::Add => {
                if adj[u].contains(v) {
                    return Err(Violation::AddOnEdge(e));
                }
                adj[u].insert(v);
                adj[v].insert(u);
                adds[u] += 1;
                adds[v] += 1;
            }
            EditKind::Delete => {
                if !adj[u].contains(v) {
                    return Err(Violation::DeleteOnNonEdge(e));
                }
                adj[u].remove(v);
                adj[v].remove(u);
                dels[u] += 1;
                dels[v] += 1;
            }
        }
    }
    for u in 0..n {
        let nbrs: Vec<usize> = adj[u].iter().collect();
        for (i, &v) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if !adj[v].contains(w) {
                    return Err(Violation::NotClusterGraph(u, v, w));
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut clusters = Vec::new();
    for v in 0..n {
        if !seen[v] {
            let mut cluster: Vec<usize> = adj[v].iter().chain(std::iter::once(v)).collect();
            cluster.sort_unstable();
            for &x in &cluster {
                seen[x] = true;
            }
            clusters.push(cluster);
        }
    }
    if let Some(c) = clusters.iter().find(|c| c.len() < params.s as usize) {
        return Err(Violation::ClusterTooSmall(c.clone()));
    }
    for v in 0..n {
        if adds[v] > budgets.alpha[v] {
            return Err(Violation::AlphaExceeded(v));
        }
        if dels[v] > budgets.delta[v] {
            return Err(Violation::DeltaExceeded(v));
        }
    }
    if let Some(k) = params.k {
        if script.len() > k as usize {
            return Err(Violation::BudgetExceeded {
                used: script.len(),
                k,
            });
        }
    }
    Ok(clusters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(a: u32, d: u32, s: u32, k: Option<u32>) -> AnnotatedInstance {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        AnnotatedInstance::build(&g, Params::new(a, d, s, k).unwrap(), &Overrides::default())
            .unwrap()
    }

    #[test]
    fn build_sets_states_and_budgets() {
        let inst = p3(1, 1, 1, Some(1));
        assert_eq!(inst.pair_state(0, 1), Ok(PairState::Edge));
        assert_eq!(inst.pair_state(2, 1), Ok(PairState::Edge));
        assert_eq!(inst.pair_state(0, 2), Ok(PairState::NonEdge));
        assert_eq!(inst.residual_k(), Some(1));
        assert!(inst.edit_log().is_empty());
        assert_eq!((inst.alpha(2), inst.delta(2)), (1, 1));
    }

    #[test]
    fn build_rejects_bad_graphs() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(BuildError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 2)]),
            Err(BuildError::OutOfRange { v: 2, n: 2 })
        );
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(BuildError::DuplicateEdge(0, 1))
        );
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let mut ov = Overrides::default();
        ov.delta.insert(1, 3);
        let err =
            AnnotatedInstance::build(&g, Params::new(1, 2, 1, None).unwrap(), &ov).unwrap_err();
        assert_eq!(
            err,
            BuildError::DeltaOverride {
                v: 1,
                value: 3,
                max: 2
            }
        );
        assert_eq!(
            Params::new(0, 0, 0, None),
            Err(ParamsError::ZeroClusterSize)
        );
    }

    #[test]
    fn edgeless_instance_is_cluster_graph() {
        let g = Graph::new(3, []).unwrap();
        let inst = AnnotatedInstance::build(
            &g,
            Params::new(0, 0, 1, Some(0)).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        assert_eq!(inst.components(), (vec![vec![0], vec![1], vec![2]], true));
        assert_eq!(inst.find_conflict_triple(), None);
    }

    #[test]
    fn delete_charges_and_forbids() {
        let mut inst = p3(1, 1, 1, Some(1));
        inst.apply_edit(Edit::delete(1, 2)).unwrap();
        assert_eq!(inst.pair_state(1, 2), Ok(PairState::ForbiddenNonEdge));
        assert_eq!((inst.delta(1), inst.delta(2)), (0, 0));
        assert_eq!(inst.residual_k(), Some(0));
        inst.check_invariants().unwrap();
    }

    #[test]
    fn add_charges_and_makes_permanent() {
        let mut inst = p3(1, 1, 1, Some(1));
        inst.apply_edit(Edit::add(0, 2)).unwrap();
        assert_eq!(inst.pair_state(0, 2), Ok(PairState::PermanentEdge));
        assert_eq!((inst.alpha(0), inst.alpha(2)), (0, 0));
        assert_eq!(inst.residual_k(), Some(0));
        inst.check_invariants().unwrap();
    }

    #[test]
    fn exhausted_delta_is_a_no_instance() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let mut ov = Overrides::default();
        ov.delta.insert(1, 0);
        let mut inst =
            AnnotatedInstance::build(&g, Params::new(1, 1, 1, Some(1)).unwrap(), &ov).unwrap();
        assert_eq!(
            inst.apply_edit(Edit::delete(0, 1)),
            Err(EditError::NoInstance(NoReason::Rule(1)))
        );
    }

    #[test]
    fn edit_preconditions() {
        let mut inst = p3(1, 1, 1, None);
        assert!(matches!(
            inst.apply_edit(Edit::add(0, 1)),
            Err(EditError::Precondition {
                state: PairState::Edge,
                ..
            })
        ));
        inst.apply_edit(Edit::add(0, 2)).unwrap();
        assert_eq!(inst.pair_state(2, 0), Ok(PairState::PermanentEdge));
        assert_eq!(
            inst.apply_edit(Edit::delete(0, 2)),
            Err(EditError::NoInstance(NoReason::Rule(1)))
        );
        assert_eq!(inst.pair_state(1, 1), Err(PairError::SameVertex(1)));
    }

    #[test]
    fn conflict_triples() {
        assert_eq!(p3(1, 1, 1, None).find_conflict_triple(), Some((1, 0, 2)));
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = AnnotatedInstance::build(
            &tri,
            Params::new(1, 1, 1, None).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        assert_eq!(inst.find_conflict_triple(), None);
        let two_k2 = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let inst = AnnotatedInstance::build(
            &two_k2,
            Params::new(1, 1, 1, None).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        assert_eq!(inst.find_conflict_triple(), None);
    }

    #[test]
    fn component_partition() {
        let g = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        let inst = AnnotatedInstance::build(
            &g,
            Params::new(1, 1, 1, None).unwrap(),
            &Overrides::default(),
        )
        .unwrap();
        assert_eq!(
            inst.components(),
            (vec![vec![0, 1, 2], vec![3, 4, 5]], true)
        );
        assert_eq!(p3(1, 1, 1, None).components(), (vec![vec![0, 1, 2]], false));
    }

    #[test]
    fn validation_examples() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let params = Params::new(1, 1, 1, Some(1)).unwrap();
        assert_eq!(
            validate_solution(&g, &[Edit::delete(1, 2)], &params),
            Ok(vec![vec![0, 1], vec![2]])
        );
        assert_eq!(
            validate_solution(
                &g,
                &[Edit::add(0, 2)],
                &Params::new(0, 1, 1, Some(1)).unwrap()
            ),
            Err(Violation::AlphaExceeded(0))
        );
        assert_eq!(
            validate_solution(
                &g,
                &[Edit::delete(1, 2)],
                &Params::new(1, 1, 2, Some(1)).unwrap()
            ),
            Err(Violation::ClusterTooSmall(vec![2]))
        );
        assert_eq!(
            validate_solution(&g, &[Edit::delete(1, 2), Edit::add(1, 2)], &params),
            Err(Violation::DoubleEdit(1, 2))
        );
        assert_eq!(
            validate_solution(&g, &[], &params),
            Err(Violation::NotClusterGraph(1, 0, 2))
        );
        assert_eq!(
            validate_solution(&g, &[Edit::delete(0, 1), Edit::delete(1, 2)], &params),
            Err(Violation::DeltaExceeded(1))
        );
    }

    #[test]
    fn reason_tags_round_trip() {
        for r in [
            NoReason::Rule(9),
            NoReason::Exhausted,
            NoReason::Unmatchable,
            NoReason::OverBudget,
        ] {
            assert_eq!(r.to_string().parse::<NoReason>(), Ok(r));
        }
        assert!("rule18".parse::<NoReason>().is_err());
    }
}
