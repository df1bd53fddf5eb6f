#![allow(dead_code, clippy::needless_range_loop)]

use mpce::graph::{AnnotatedInstance, Graph, Overrides, Params};

/// Bit index of pair `u < v` in a packed edge mask.
fn pair_bit(u: usize, v: usize) -> u32 {
    let (u, v) = (u.min(v), u.max(v));
    (v * (v - 1) / 2 + u) as u32
}

fn mask_of(n: usize, adj: &[u32]) -> u64 {
    let mut mask = 0u64;
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                mask |= 1 << pair_bit(u, v);
            }
        }
    }
    mask
}

/// Minimum packed mask over relabelings that sort vertices by degree
/// (descending). Isomorphic graphs get the same value.
fn canonical(n: usize, adj: &[u32]) -> u64 {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(adj[v].count_ones()));
    // classes of equal degree, as ranges into `order`
    let mut classes = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || adj[order[i]].count_ones() != adj[order[start]].count_ones() {
            classes.push(order[start..i].to_vec());
            start = i;
        }
    }
    let mut best = u64::MAX;
    let mut label = vec![0usize; n];
    fn assign(
        classes: &[Vec<usize>],
        ci: usize,
        next: usize,
        label: &mut Vec<usize>,
        adj: &[u32],
        n: usize,
        best: &mut u64,
    ) {
        if ci == classes.len() {
            let mut relabeled = vec![0u32; n];
            for u in 0..n {
                for v in 0..n {
                    if adj[u] >> v & 1 == 1 {
                        relabeled[label[u]] |= 1 << label[v];
                    }
                }
            }
            *best = (*best).min(mask_of(n, &relabeled));
            return;
        }
        let mut members = classes[ci].clone();
        permute(&mut members, 0, &mut |perm| {
            for (i, &v) in perm.iter().enumerate() {
                label[v] = next + i;
            }
            assign(classes, ci + 1, next + perm.len(), label, adj, n, best);
        });
    }
    assign(&classes, 0, 0, &mut label, adj, n, &mut best);
    best
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

fn graph_of(n: usize, adj: &[u32]) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u] >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// One representative per isomorphism class, for each order `0..=max_n`.
pub fn graph_classes(max_n: usize) -> Vec<Vec<Graph>> {
    let mut out = vec![vec![Graph::new(0, []).unwrap()]];
    let mut reps: Vec<Vec<u32>> = vec![vec![]];
    for n in 1..=max_n {
        let mut seen = std::collections::BTreeMap::new();
        for base in &reps {
            for nbrs in 0u32..(1 << (n - 1)) {
                let mut adj = base.clone();
                adj.push(nbrs);
                for v in 0..n - 1 {
                    if nbrs >> v & 1 == 1 {
                        adj[v] |= 1 << (n - 1);
                    }
                }
                seen.entry(canonical(n, &adj)).or_insert(adj);
            }
        }
        reps = seen.into_values().collect();
        out.push(reps.iter().map(|adj| graph_of(n, adj)).collect());
    }
    out
}

pub fn instance(graph: &Graph, params: Params) -> AnnotatedInstance {
    AnnotatedInstance::build(graph, params, &Overrides::default()).unwrap()
}

pub fn params(a: u32, d: u32, s: u32, k: Option<u32>) -> Params {
    Params::new(a, d, s, k).unwrap()
}

/// `(a, d, s)` over `{0,1,2}² × {1,2,3}`.
pub fn grid() -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for a in 0..=2 {
        for d in 0..=2 {
            for s in 1..=3 {
                out.push((a, d, s));
            }
        }
    }
    out
}
