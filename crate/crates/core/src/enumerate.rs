//! Isomorph-free enumeration of small support graphs.
//!
//! Free trees are canonicalised with a centre-rooted AHU encoding and grown
//! leaf by leaf. Everything else (unicyclic, connected, fixed edge count)
//! uses an individualisation-refinement canonical form over adjacency
//! bitmasks and is grown edge by edge from a seed class. Every enumerator
//! returns one representative per isomorphism class, relabelled into its
//! canonical labelling and sorted by canonical key, so output order is fixed.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph;

pub const MAX_TREE_ORDER: usize = 12;
pub const MAX_UNICYCLIC_ORDER: usize = 9;
pub const MAX_CONNECTED_ORDER: usize = 7;
pub const MAX_GENERAL_ORDER: usize = 8;

/// Crisp support graph on `n` vertices with canonically sorted edges (`u < v`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Support {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Support {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| if u < v { (u, v) } else { (v, u) })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        Support { n, edges }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn is_connected(&self) -> bool {
        graph::is_connected(self.n, &self.edges)
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn is_path(&self) -> bool {
        self.is_tree() && self.degrees().iter().all(|&d| d <= 2)
    }

    pub fn is_star(&self) -> bool {
        self.is_tree() && (self.n <= 3 || self.degrees().iter().any(|&d| d + 1 == self.n))
    }

    pub fn is_cycle(&self) -> bool {
        self.n >= 3 && self.edges.len() == self.n && self.is_connected() && self.degrees().iter().all(|&d| d == 2)
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// Edges pairwise disjoint.
    pub fn is_matching(&self) -> bool {
        self.degrees().iter().all(|&d| d <= 1)
    }

    /// Short human-readable shape tag.
    pub fn shape(&self) -> &'static str {
        if self.is_path() {
            "path"
        } else if self.is_star() {
            "star"
        } else if self.is_cycle() {
            "cycle"
        } else if self.is_complete() {
            "complete"
        } else if self.is_matching() {
            "matching"
        } else if self.is_tree() {
            "tree"
        } else if self.edges.len() == self.n && self.is_connected() {
            "unicyclic"
        } else {
            "graph"
        }
    }

    /// Edge list as `u-v u-v ...`.
    pub fn edge_list_string(&self) -> String {
        self.edges
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn bitmasks(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }
}

fn check_range(what: &'static str, n: usize, min: usize, max: usize) -> Result<()> {
    if (min..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange { what, n, min, max })
    }
}

// ---------------------------------------------------------------------------
// Trees

const OPEN: u8 = 0;
const CLOSE: u8 = 1;

fn rooted_code(adj: &[Vec<usize>], root: usize, parent: usize) -> Vec<u8> {
    let mut kids: Vec<Vec<u8>> = adj[root]
        .iter()
        .filter(|&&c| c != parent)
        .map(|&c| rooted_code(adj, c, root))
        .collect();
    kids.sort_unstable();
    let mut out = Vec::with_capacity(2 + kids.iter().map(Vec::len).sum::<usize>());
    out.push(OPEN);
    for k in kids {
        out.extend(k);
    }
    out.push(CLOSE);
    out
}

fn tree_centres(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
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
    layer
}

/// Canonical AHU key of a free tree. Bicentral trees are rooted at a virtual
/// vertex splitting the central edge, which makes their key two symbols
/// longer than a unicentral key on the same order.
pub fn tree_key(support: &Support) -> Vec<u8> {
    debug_assert!(support.is_tree());
    let mut adj = vec![Vec::new(); support.n];
    for &(u, v) in &support.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    match tree_centres(&adj)[..] {
        [c] => rooted_code(&adj, c, usize::MAX),
        [a, b] => {
            let mut halves = [rooted_code(&adj, a, b), rooted_code(&adj, b, a)];
            halves.sort_unstable();
            let mut out = vec![OPEN];
            out.extend_from_slice(&halves[0]);
            out.extend_from_slice(&halves[1]);
            out.push(CLOSE);
            out
        }
        _ => vec![OPEN, CLOSE],
    }
}

/// Rebuilds the tree whose key is `key`, labelling vertices in preorder.
fn tree_from_key(n: usize, key: &[u8]) -> Support {
    let virtual_root = key.len() == 2 * (n + 1);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut stack: Vec<Option<usize>> = Vec::new();
    let mut next = 0usize;
    let mut virtual_children = Vec::new();
    for (i, &sym) in key.iter().enumerate() {
        if sym == OPEN {
            if virtual_root && i == 0 {
                stack.push(None);
                continue;
            }
            let id = next;
            next += 1;
            match stack.last() {
                Some(Some(parent)) => edges.push((*parent, id)),
                Some(None) => virtual_children.push(id),
                None => {}
            }
            stack.push(Some(id));
        } else {
            stack.pop();
        }
    }
    if let [a, b] = virtual_children[..] {
        edges.push((a, b));
    }
    Support::new(n, edges)
}

/// One representative per isomorphism class of free trees on `n` vertices.
pub fn enumerate_trees(n: usize) -> Result<Vec<Support>> {
    check_range("tree enumeration", n, 1, MAX_TREE_ORDER)?;
    let mut level: Vec<Support> = vec![Support::new(1, [])];
    for order in 2..=n {
        let mut keys: BTreeMap<Vec<u8>, ()> = BTreeMap::new();
        for t in &level {
            for attach in 0..t.n {
                let mut edges = t.edges.clone();
                edges.push((attach, t.n));
                keys.insert(tree_key(&Support::new(order, edges)), ());
            }
        }
        level = keys.keys().map(|k| tree_from_key(order, k)).collect();
    }
    Ok(level)
}

// ---------------------------------------------------------------------------
// General graphs

/// Canonical key: upper-triangle adjacency bits under the canonical labelling.
type GraphKey = u128;

fn code_for(adj: &[u32], order: &[usize]) -> GraphKey {
    let n = order.len();
    let mut code: GraphKey = 0;
    for i in 0..n {
        let row = adj[order[i]];
        for &oj in &order[i + 1..n] {
            code = (code << 1) | ((row >> oj) & 1) as GraphKey;
        }
    }
    code
}

/// Refines an ordered partition to the coarsest equitable one. Cells split
/// by (neighbour count per cell) signatures, kept in signature order, so the
/// result depends only on the isomorphism type of (graph, partition).
fn refine(adj: &[u32], mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    loop {
        let masks: Vec<u32> = cells.iter().map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut tagged: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (adj[v] & m).count_ones()).collect(), v))
                .collect();
            tagged.sort();
            let mut start = 0;
            for i in 1..=tagged.len() {
                if i == tagged.len() || tagged[i].0 != tagged[start].0 {
                    next.push(tagged[start..i].iter().map(|t| t.1).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

fn search(adj: &[u32], cells: Vec<Vec<usize>>, best: &mut Option<(GraphKey, Vec<usize>)>) {
    let cells = refine(adj, cells);
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let code = code_for(adj, &order);
        if best.as_ref().is_none_or(|(b, _)| code > *b) {
            *best = Some((code, order));
        }
        return;
    };
    for &v in &cells[target] {
        let mut branch = Vec::with_capacity(cells.len() + 1);
        branch.extend_from_slice(&cells[..target]);
        branch.push(vec![v]);
        branch.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        branch.extend_from_slice(&cells[target + 1..]);
        search(adj, branch, best);
    }
}

/// Canonical key and the relabelled representative of `support`.
pub fn canonical_form(support: &Support) -> (GraphKey, Support) {
    let n = support.n;
    assert!(n <= 16, "canonical form limited to 16 vertices");
    if n == 0 {
        return (0, support.clone());
    }
    let adj = support.bitmasks();
    let mut best = None;
    search(&adj, vec![(0..n).collect()], &mut best);
    let (code, order) = best.expect("search visits at least one leaf");
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let relabelled = Support::new(n, support.edges.iter().map(|&(u, v)| (pos[u], pos[v])));
    (code, relabelled)
}

/// Adds one absent edge in every possible way; returns canonical classes.
fn augment(classes: &[Support]) -> BTreeMap<GraphKey, Support> {
    let mut out = BTreeMap::new();
    for g in classes {
        let adj = g.bitmasks();
        for u in 0..g.n {
            for v in (u + 1)..g.n {
                if adj[u] >> v & 1 == 1 {
                    continue;
                }
                let mut edges = g.edges.clone();
                edges.push((u, v));
                let (key, rep) = canonical_form(&Support::new(g.n, edges));
                out.entry(key).or_insert(rep);
            }
        }
    }
    out
}

fn sorted_classes(map: BTreeMap<GraphKey, Support>) -> Vec<Support> {
    map.into_values().rev().collect()
}

/// One representative per isomorphism class of connected unicyclic graphs
/// (n vertices, n edges).
pub fn enumerate_unicyclic(n: usize) -> Result<Vec<Support>> {
    check_range("unicyclic enumeration", n, 3, MAX_UNICYCLIC_ORDER)?;
    Ok(sorted_classes(augment(&enumerate_trees(n)?)))
}

/// One representative per isomorphism class of connected graphs on `n` vertices.
pub fn enumerate_connected(n: usize) -> Result<Vec<Support>> {
    check_range("connected enumeration", n, 1, MAX_CONNECTED_ORDER)?;
    let mut level = enumerate_trees(n)?;
    let mut all = level.clone();
    let max_edges = n * (n - 1) / 2;
    for _ in n.saturating_sub(1)..max_edges {
        level = sorted_classes(augment(&level));
        all.extend(level.iter().cloned());
    }
    Ok(all)
}

/// One representative per isomorphism class of graphs (connected or not)
/// with exactly `edges` edges on `n` vertices.
pub fn enumerate_with_edges(n: usize, edges: usize) -> Result<Vec<Support>> {
    check_range("fixed-size enumeration", n, 1, MAX_GENERAL_ORDER)?;
    if edges > n * (n - 1) / 2 {
        return Err(Error::InvalidTask(format!("{n} vertices cannot carry {edges} edges")));
    }
    let mut level = vec![Support::new(n, [])];
    for _ in 0..edges {
        level = sorted_classes(augment(&level));
    }
    Ok(level)
}
