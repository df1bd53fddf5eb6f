//! The seventeen reduction rules and the cascading fixpoint driver.
//!
//! Rules are grouped as they build on each other:
//!
//! | group | rules  | based on                          |
//! |-------|--------|-----------------------------------|
//! | 1     | 1-3    | exhausted budgets                 |
//! | 2     | 4-5    | decided conflict triples          |
//! | 3     | 6-8    | common / private neighborhoods    |
//! | 4     | 9-12   | minimum cluster size              |
//! | 5     | 13-15  | permanent and isolated cliques    |
//! | 6     | 16-17  | counting isolated cliques vs. `k` |
//!
//! Within a group every rule is applied exhaustively before the next one is
//! tried; whenever a group past the first changes the instance, the driver
//! starts over from group 1. Each rule pass collects its triggers against a
//! snapshot and re-checks each one before acting on it.

use std::fmt;

use crate::graph::{AnnotatedInstance, Edit, EditError, NoReason, PairState};

/// A single state change performed by a rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Add(usize, usize),
    Delete(usize, usize),
    MakePermanent(usize, usize),
    Forbid(usize, usize),
    CapDelta { v: usize, to: i64 },
    RemoveCluster(Vec<usize>),
    Reject(NoReason),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEntry {
    pub rule: u8,
    pub action: Action,
}

impl fmt::Display for TraceEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule{} ", self.rule)?;
        match &self.action {
            Action::Add(u, v) => write!(f, "add {u} {v}"),
            Action::Delete(u, v) => write!(f, "del {u} {v}"),
            Action::MakePermanent(u, v) => write!(f, "permanent {u} {v}"),
            Action::Forbid(u, v) => write!(f, "forbid {u} {v}"),
            Action::CapDelta { v, to } => write!(f, "cap-delta {v} {to}"),
            Action::RemoveCluster(c) => {
                f.write_str("remove")?;
                for v in c {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
            Action::Reject(reason) => write!(f, "reject {reason}"),
        }
    }
}

pub type RuleTrace = Vec<TraceEntry>;

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ReductionOutcome {
    Reduced(AnnotatedInstance),
    NoInstance(NoReason),
}

impl ReductionOutcome {
    pub fn reduced(self) -> Option<AnnotatedInstance> {
        match self {
            ReductionOutcome::Reduced(inst) => Some(inst),
            ReductionOutcome::NoInstance(_) => None,
        }
    }
}

pub const GROUPS: [&[u8]; 6] = [
    &[1, 2, 3],
    &[4, 5],
    &[6, 7, 8],
    &[9, 10, 11, 12],
    &[13, 14, 15],
    &[16, 17],
];

type Step = Result<bool, NoReason>;

struct Reducer {
    inst: AnnotatedInstance,
    trace: RuleTrace,
}

impl Reducer {
    fn new(inst: AnnotatedInstance) -> Self {
        Reducer {
            inst,
            trace: Vec::new(),
        }
    }

    fn log(&mut self, rule: u8, action: Action) {
        self.trace.push(TraceEntry { rule, action });
    }

    fn reject(&mut self, rule: u8, reason: NoReason) -> NoReason {
        self.log(rule, Action::Reject(reason));
        reason
    }

    fn charge(&mut self, rule: u8, edit: Edit) -> Step {
        let (u, v) = edit.endpoints();
        let action = match edit.kind {
            crate::graph::EditKind::Add => Action::Add(u, v),
            crate::graph::EditKind::Delete => Action::Delete(u, v),
        };
        self.log(rule, action);
        match self.inst.apply_edit(edit) {
            Ok(()) => Ok(true),
            Err(EditError::NoInstance(reason)) => Err(self.reject(1, reason)),
            Err(e @ EditError::Precondition { .. }) => {
                unreachable!("rule {rule} issued invalid edit: {e}")
            }
        }
    }

    /// Forces `u` and `v` into the same cluster.
    fn together(&mut self, rule: u8, u: usize, v: usize) -> Step {
        match self.inst.state(u, v) {
            PairState::PermanentEdge => Ok(false),
            PairState::Edge => {
                self.inst.make_permanent(u, v);
                self.log(rule, Action::MakePermanent(u.min(v), u.max(v)));
                Ok(true)
            }
            PairState::NonEdge => self.charge(rule, Edit::add(u, v)),
            PairState::ForbiddenNonEdge => Err(self.reject(rule, NoReason::Rule(rule))),
        }
    }

    /// Forces `u` and `v` into different clusters.
    fn apart(&mut self, rule: u8, u: usize, v: usize) -> Step {
        match self.inst.state(u, v) {
            PairState::ForbiddenNonEdge => Ok(false),
            PairState::NonEdge => {
                self.inst.forbid(u, v);
                self.log(rule, Action::Forbid(u.min(v), u.max(v)));
                Ok(true)
            }
            PairState::Edge => self.charge(rule, Edit::delete(u, v)),
            PairState::PermanentEdge => Err(self.reject(rule, NoReason::Rule(rule))),
        }
    }

    fn active(&self) -> Vec<usize> {
        self.inst.active_vertices().collect()
    }

    fn active_pairs(&self) -> Vec<(usize, usize)> {
        let vs = self.active();
        let mut pairs = Vec::with_capacity(vs.len() * vs.len() / 2);
        for (i, &u) in vs.iter().enumerate() {
            for &v in &vs[i + 1..] {
                pairs.push((u, v));
            }
        }
        pairs
    }

    /// Runs `act` on every snapshot pair for which `cond` still holds.
    fn pair_rule(
        &mut self,
        cond: impl Fn(&AnnotatedInstance, usize, usize) -> bool,
        mut act: impl FnMut(&mut Self, usize, usize) -> Step,
    ) -> Step {
        let triggers: Vec<_> = self
            .active_pairs()
            .into_iter()
            .filter(|&(u, v)| cond(&self.inst, u, v))
            .collect();
        let mut changed = false;
        for (u, v) in triggers {
            if cond(&self.inst, u, v) {
                changed |= act(self, u, v)?;
            }
        }
        Ok(changed)
    }

    fn rule(&mut self, id: u8) -> Step {
        match id {
            1 => self.rule1(),
            2 => self.rule2(),
            3 => self.rule3(),
            4 => self.rule4(),
            5 => self.rule5(),
            6 => self.rule6(),
            7 => self.rule7(),
            8 => self.rule8(),
            9 => self.rule9(),
            10 => self.rule10(),
            11 => self.rule11(),
            12 => self.rule12(),
            13 => self.rule13(),
            14 | 15 => self.rules14_15(id),
            16 => self.rule16(),
            17 => self.rule17(),
            _ => unreachable!("no rule {id}"),
        }
    }

    fn rule1(&mut self) -> Step {
        if self.inst.has_negative_budget() {
            return Err(self.reject(1, NoReason::Rule(1)));
        }
        Ok(false)
    }

    /// `δ(v) = 0`: the whole closed neighborhood stays together.
    fn rule2(&mut self) -> Step {
        let mut changed = false;
        for v in self.active() {
            if self.inst.delta(v) != 0 {
                continue;
            }
            let mut closed: Vec<usize> = self.inst.neighbors(v).iter().collect();
            closed.push(v);
            closed.sort_unstable();
            for (i, &x) in closed.iter().enumerate() {
                for &y in &closed[i + 1..] {
                    changed |= self.together(2, x, y)?;
                }
            }
        }
        Ok(changed)
    }

    fn rule3(&mut self) -> Step {
        self.pair_rule(
            |inst, u, v| {
                (inst.alpha(u) == 0 || inst.alpha(v) == 0) && inst.state(u, v) == PairState::NonEdge
            },
            |r, u, v| r.apart(3, u, v),
        )
    }

    fn rule4(&mut self) -> Step {
        let mut changed = false;
        for u in self.active() {
            let perm: Vec<usize> = self.inst.permanent_neighbors(u).iter().collect();
            for (i, &v) in perm.iter().enumerate() {
                for &w in &perm[i + 1..] {
                    if self.inst.state(v, w) != PairState::PermanentEdge {
                        changed |= self.together(4, v, w)?;
                    }
                }
            }
        }
        Ok(changed)
    }

    fn rule5(&mut self) -> Step {
        let mut changed = false;
        for u in self.active() {
            let perm: Vec<usize> = self.inst.permanent_neighbors(u).iter().collect();
            let forbidden: Vec<usize> = self
                .inst
                .active_vertices()
                .filter(|&w| w != u && self.inst.state(u, w) == PairState::ForbiddenNonEdge)
                .collect();
            for &v in &perm {
                for &w in &forbidden {
                    if self.inst.state(u, v) == PairState::PermanentEdge && v != w {
                        changed |= self.apart(5, v, w)?;
                    }
                }
            }
        }
        Ok(changed)
    }

    /// Non-adjacent pair with more than `δ(u) + δ(v)` common neighbors.
    fn rule6(&mut self) -> Step {
        self.pair_rule(
            |inst, u, v| {
                !inst.state(u, v).is_edge()
                    && inst.common_neighbors(u, v) as i64 > inst.delta(u) + inst.delta(v)
            },
            |r, u, v| r.together(6, u, v),
        )
    }

    fn rule7(&mut self) -> Step {
        let threshold = 2 * self.inst.params().d as i64 - 1;
        self.pair_rule(
            |inst, u, v| {
                inst.state(u, v) == PairState::Edge
                    && inst.common_neighbors(u, v) as i64 >= threshold
            },
            |r, u, v| r.together(7, u, v),
        )
    }

    /// More than `a + d` neighbors of one endpoint outside the other's closed
    /// neighborhood.
    fn rule8(&mut self) -> Step {
        let limit = (self.inst.params().a + self.inst.params().d) as usize;
        self.pair_rule(
            |inst, u, v| {
                if inst.state(u, v) == PairState::ForbiddenNonEdge {
                    return false;
                }
                let adjacent = usize::from(inst.state(u, v).is_edge());
                let private_u = inst.neighbors(u).and_not_count(inst.neighbors(v)) - adjacent;
                let private_v = inst.neighbors(v).and_not_count(inst.neighbors(u)) - adjacent;
                private_u.max(private_v) > limit
            },
            |r, u, v| r.apart(8, u, v),
        )
    }

    fn rule9(&mut self) -> Step {
        let need = self.inst.params().s as i64 - 1;
        for v in self.active() {
            if need > self.inst.degree(v) as i64 + self.inst.alpha(v) {
                return Err(self.reject(9, NoReason::Rule(9)));
            }
        }
        Ok(false)
    }

    fn rule10(&mut self) -> Step {
        let need = self.inst.params().s as i64 - 1;
        let mut changed = false;
        for v in self.active() {
            let cap = self.inst.degree(v) as i64 + self.inst.alpha(v) - need;
            if self.inst.delta(v) > cap {
                self.inst.cap_delta(v, cap);
                self.log(10, Action::CapDelta { v, to: cap });
                changed = true;
            }
        }
        Ok(changed)
    }

    fn rule11(&mut self) -> Step {
        let s = self.inst.params().s as i64;
        if s <= 2 {
            return Ok(false);
        }
        self.pair_rule(
            |inst, u, v| {
                inst.state(u, v) == PairState::NonEdge
                    && (inst.common_neighbors(u, v) as i64) < s - inst.alpha(u) - inst.alpha(v)
            },
            |r, u, v| r.apart(11, u, v),
        )
    }

    fn rule12(&mut self) -> Step {
        let p = *self.inst.params();
        if p.s <= 2 {
            return Ok(false);
        }
        let threshold = p.s as i64 - 2 * p.a as i64 - 2;
        self.pair_rule(
            |inst, u, v| {
                inst.state(u, v).is_edge() && (inst.common_neighbors(u, v) as i64) < threshold
            },
            |r, u, v| r.apart(12, u, v),
        )
    }

    fn isolated_cliques(&self) -> Vec<Vec<usize>> {
        self.inst
            .active_components()
            .into_iter()
            .filter(|c| c.iter().all(|&v| self.inst.degree(v) == c.len() - 1))
            .collect()
    }

    /// Large isolated cliques are final. With `s = 1` every isolated clique
    /// is final, since no outside vertex ever needs to join one.
    fn rule13(&mut self) -> Step {
        let p = *self.inst.params();
        let mut changed = false;
        for c in self.isolated_cliques() {
            if c.len() > p.clique_cap() as usize || p.s == 1 {
                if c.len() < p.s as usize {
                    return Err(self.reject(13, NoReason::Rule(13)));
                }
                self.log(13, Action::RemoveCluster(c.clone()));
                self.inst.remove_cluster(c);
                changed = true;
            }
        }
        Ok(changed)
    }

    /// Components of the permanent relation that are permanent cliques.
    fn permanent_cliques(&self) -> Vec<Vec<usize>> {
        let n = self.inst.n();
        let mut seen = vec![false; n];
        let mut cliques = Vec::new();
        for start in self.active() {
            if seen[start] || self.inst.permanent_neighbors(start).is_empty() {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for y in self.inst.permanent_neighbors(x).iter() {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            if comp
                .iter()
                .all(|&x| self.inst.permanent_neighbors(x).count() == comp.len() - 1)
            {
                cliques.push(comp);
            }
        }
        cliques
    }

    /// Join (rule 14) or detach (rule 15) a vertex relative to a permanent
    /// clique. One application per call; the outer loop rescans.
    fn rules14_15(&mut self, id: u8) -> Step {
        let p = *self.inst.params();
        for c in self.permanent_cliques() {
            let size = c.len();
            for v in self.active() {
                if c.binary_search(&v).is_ok() {
                    continue;
                }
                let inside = c
                    .iter()
                    .filter(|&&x| self.inst.neighbors(v).contains(x))
                    .count();
                let join = inside > p.d as usize;
                let detach = size > p.a as usize && inside < size - p.a as usize;
                if join && detach {
                    return Err(self.reject(15, NoReason::Rule(15)));
                }
                let mut changed = false;
                if join && id == 14 {
                    for &x in &c {
                        changed |= self.together(14, v, x)?;
                    }
                } else if detach && id == 15 {
                    for &x in &c {
                        changed |= self.apart(15, v, x)?;
                    }
                }
                if changed {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn rule16(&mut self) -> Step {
        let (Some(k), s) = (self.inst.residual_k(), self.inst.params().s as usize) else {
            return Ok(false);
        };
        let small: usize = self
            .isolated_cliques()
            .iter()
            .map(Vec::len)
            .filter(|&len| len < s)
            .sum();
        if small as i64 > 2 * k {
            return Err(self.reject(16, NoReason::Rule(16)));
        }
        Ok(false)
    }

    /// Keeps the `⌈k/2⌉` smallest non-small isolated cliques when there are
    /// more than `k` of them.
    fn rule17(&mut self) -> Step {
        let (Some(k), s) = (self.inst.residual_k(), self.inst.params().s as usize) else {
            return Ok(false);
        };
        if s <= 1 {
            return Ok(false);
        }
        let mut big: Vec<Vec<usize>> = self
            .isolated_cliques()
            .into_iter()
            .filter(|c| c.len() >= s)
            .collect();
        if big.len() as i64 <= k {
            return Ok(false);
        }
        big.sort_by_key(|c| (c.len(), c[0]));
        let keep = ((k + 1) / 2) as usize;
        for c in big.split_off(keep) {
            self.log(17, Action::RemoveCluster(c.clone()));
            self.inst.remove_cluster(c);
        }
        Ok(true)
    }

    fn exhaust(&mut self, id: u8) -> Step {
        let mut changed = false;
        while self.rule(id)? {
            changed = true;
        }
        Ok(changed)
    }

    fn run_group(&mut self, group: &[u8]) -> Step {
        let mut changed = false;
        loop {
            let mut pass = false;
            for &id in group {
                pass |= self.exhaust(id)?;
            }
            if !pass {
                return Ok(changed);
            }
            changed = true;
        }
    }

    fn run(&mut self) -> Result<(), NoReason> {
        'restart: loop {
            for (g, group) in GROUPS.iter().enumerate() {
                if self.run_group(group)? && g > 0 {
                    continue 'restart;
                }
            }
            return Ok(());
        }
    }
}

fn outcome(reducer: Reducer, result: Result<(), NoReason>) -> (ReductionOutcome, RuleTrace) {
    let out = match result {
        Ok(()) => ReductionOutcome::Reduced(reducer.inst),
        Err(reason) => ReductionOutcome::NoInstance(reason),
    };
    (out, reducer.trace)
}

/// Applies all rules to a fixpoint.
pub fn reduce(inst: AnnotatedInstance) -> (ReductionOutcome, RuleTrace) {
    let mut r = Reducer::new(inst);
    let result = r.run();
    outcome(r, result)
}

fn run_single_group(inst: AnnotatedInstance, group: usize) -> ReductionOutcome {
    let mut r = Reducer::new(inst);
    let result = r.run_group(GROUPS[group]).map(|_| ());
    outcome(r, result).0
}

/// Rules 1-3, exhaustively.
pub fn apply_base_rules(inst: AnnotatedInstance) -> ReductionOutcome {
    run_single_group(inst, 0)
}

/// Rules 4-5, exhaustively.
pub fn apply_triple_rules(inst: AnnotatedInstance) -> ReductionOutcome {
    run_single_group(inst, 1)
}

/// Rules 6-8, exhaustively.
pub fn apply_common_neighbor_rules(inst: AnnotatedInstance) -> ReductionOutcome {
    run_single_group(inst, 2)
}

/// Rules 9-12, exhaustively.
pub fn apply_cluster_size_rules(inst: AnnotatedInstance) -> ReductionOutcome {
    run_single_group(inst, 3)
}

/// Rules 13-15, exhaustively.
pub fn apply_permanent_clique_rules(inst: AnnotatedInstance) -> ReductionOutcome {
    run_single_group(inst, 4)
}

/// Rules 16-17, exhaustively. Inert without a global budget.
pub fn apply_isolated_clique_rules(inst: AnnotatedInstance) -> ReductionOutcome {
    run_single_group(inst, 5)
}

/// The first rule whose condition still holds on `inst`, if any.
pub fn pending_rule(inst: &AnnotatedInstance) -> Option<u8> {
    (1..=17).find(|&id| {
        let mut probe = Reducer::new(inst.clone());
        probe.rule(id) != Ok(false)
    })
}

/// Re-applies a recorded trace to the instance it was produced from.
pub fn replay(mut inst: AnnotatedInstance, trace: &[TraceEntry]) -> ReductionOutcome {
    for entry in trace {
        let res = match &entry.action {
            Action::Add(u, v) => inst.apply_edit(Edit::add(*u, *v)),
            Action::Delete(u, v) => inst.apply_edit(Edit::delete(*u, *v)),
            Action::MakePermanent(u, v) => {
                inst.make_permanent(*u, *v);
                Ok(())
            }
            Action::Forbid(u, v) => {
                inst.forbid(*u, *v);
                Ok(())
            }
            Action::CapDelta { v, to } => {
                inst.cap_delta(*v, *to);
                Ok(())
            }
            Action::RemoveCluster(c) => {
                inst.remove_cluster(c.clone());
                Ok(())
            }
            Action::Reject(reason) => return ReductionOutcome::NoInstance(*reason),
        };
        if let Err(EditError::NoInstance(_)) = res {
            // the trace records the matching rejection next
            continue;
        }
        res.expect("trace entry does not apply");
    }
    ReductionOutcome::Reduced(inst)
}

/// Size figures of a reduced instance against the kernel bounds for budget
/// `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelStats {
    pub vertices: usize,
    pub edges: usize,
    pub max_degree: usize,
    /// `a + 3d`
    pub degree_bound: u64,
    /// `⌊(5k/2)·max(a,2d)⌋`
    pub vertex_bound: Option<u64>,
    /// `⌊(5k/4)·max(a,2d)·(a+3d)⌋`
    pub edge_bound: Option<u64>,
}

impl KernelStats {
    pub fn of(inst: &AnnotatedInstance, k: Option<u32>) -> Self {
        let p = inst.params();
        let cap = p.clique_cap() as u64;
        let degree_bound = p.a as u64 + 3 * p.d as u64;
        KernelStats {
            vertices: inst.active_count(),
            edges: inst.active_edge_count(),
            max_degree: inst.max_active_degree(),
            degree_bound,
            vertex_bound: k.map(|k| 5 * k as u64 * cap / 2),
            edge_bound: k.map(|k| 5 * k as u64 * cap * degree_bound / 4),
        }
    }

    pub fn within_degree_bound(&self) -> bool {
        self.max_degree as u64 <= self.degree_bound
    }

    pub fn within_order_bounds(&self) -> bool {
        self.vertex_bound.is_none_or(|b| self.vertices as u64 <= b)
            && self.edge_bound.is_none_or(|b| self.edges as u64 <= b)
    }
}
