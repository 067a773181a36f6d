//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashSet;

/// Decodes a Prüfer sequence over labels 0..n into an edge list.
pub fn prufer_decode(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Rooted encoding as a nested parenthesis string with sorted children.
pub fn encode(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| encode(adj, w, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Isomorphism key: minimum rooted encoding over the tree's center(s).
pub fn free_tree_key(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in &adj[leaf] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer.iter().map(|&r| encode(&adj, r, usize::MAX)).min().unwrap()
}

/// Number of free trees on n vertices from labelled Prüfer sequences.
///
/// Every tree on n >= 3 vertices has two leaves, so some labelling makes
/// labels 0 and 1 leaves; sequences can skip those labels entirely.
pub fn prufer_tree_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let len = n - 2;
    let alphabet = n - 2;
    let mut seen = HashSet::new();
    let mut digits = vec![0usize; len];
    loop {
        let seq: Vec<usize> = digits.iter().map(|d| d + 2).collect();
        seen.insert(free_tree_key(n, &prufer_decode(&seq, n)));
        let mut i = 0;
        loop {
            if i == len {
                return seen.len();
            }
            digits[i] += 1;
            if digits[i] < alphabet {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut comp, u), find(&mut comp, v));
        comp[a] = b;
    }
    let root = find(&mut comp, 0);
    (0..n).all(|v| find(&mut comp, v) == root)
}

/// Counts isomorphism classes of labelled graphs with `n` vertices and a
/// given edge-set predicate, via minimum adjacency code over all n! relabelings.
pub fn brute_force_classes(n: usize, keep: impl Fn(&[(usize, usize)]) -> bool) -> usize {
    let all: Vec<(usize, usize)> = (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    for mask in 0u32..(1 << all.len()) {
        let edges: Vec<(usize, usize)> = (0..all.len()).filter(|&i| mask >> i & 1 == 1).map(|i| all[i]).collect();
        if !keep(&edges) {
            continue;
        }
        let code = perms
            .iter()
            .map(|p| {
                let mut bits: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                bits.sort_unstable();
                bits
            })
            .min()
            .unwrap();
        seen.insert(code);
    }
    seen.len()
}


use fuzzytopo::{Edge, FuzzyGraph, IndexKind};

/// Fuzzy degrees by a plain scan over the edge list.
pub fn naive_degrees(g: &FuzzyGraph) -> Vec<f64> {
    let mut d = vec![0.0; g.order()];
    for e in g.edges() {
        d[e.u] += e.mu;
        d[e.v] += e.mu;
    }
    d
}

/// Direct summation of an index from its defining formula.
pub fn naive_index(g: &FuzzyGraph, kind: IndexKind) -> f64 {
    let d = naive_degrees(g);
    match kind {
        IndexKind::ZagrebM1 => d.iter().map(|x| x * x).sum(),
        _ => g
            .edges()
            .iter()
            .map(|e| {
                let (a, b) = (d[e.u], d[e.v]);
                match kind {
                    IndexKind::Sombor => e.mu * (a * a + b * b).sqrt(),
                    IndexKind::SomborAlpha(al) => (e.mu * (a * a + b * b).sqrt()).powf(al),
                    IndexKind::ZagrebM2 => a * b,
                    IndexKind::Randic => e.mu / (a * b).sqrt(),
                    IndexKind::Nirmala => (a + b) / (a * b).sqrt(),
                    IndexKind::ZagrebM1 => unreachable!(),
                }
            })
            .sum(),
    }
}

/// Classical Sombor index of a simple graph from integer degrees.
pub fn classical_sombor(n: usize, pairs: &[(usize, usize)]) -> f64 {
    let mut deg = vec![0u64; n];
    for &(u, v) in pairs {
        deg[u] += 1;
        deg[v] += 1;
    }
    pairs.iter().map(|&(u, v)| ((deg[u] * deg[u] + deg[v] * deg[v]) as f64).sqrt()).sum()
}

/// Central finite-difference gradient of SO with respect to each edge
/// membership, in edge order. Perturbed graphs skip validation.
pub fn fd_sombor_gradient(g: &FuzzyGraph, h: f64) -> Vec<f64> {
    let so = |edges: Vec<Edge>| naive_index(&FuzzyGraph::from_raw(g.nu().to_vec(), edges), IndexKind::Sombor);
    (0..g.edge_count())
        .map(|i| {
            let bump = |delta: f64| {
                let mut edges = g.edges().to_vec();
                edges[i].mu += delta;
                edges
            };
            (so(bump(h)) - so(bump(-h))) / (2.0 * h)
        })
        .collect()
}
