//! Fuzzy graph model: vertex memberships ν, edge memberships μ, and the
//! quantities derived from them (fuzzy degree, fuzzy size).
//!
//! A [`FuzzyGraph`] stores only edges with μ > 0; an absent pair means μ = 0.
//! Edges are kept in canonical order, sorted by `(min, max)` endpoint pair.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Undirected edge with its membership value. Canonical edges have `u < v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub mu: f64,
}

impl Edge {
    pub fn new(u: usize, v: usize, mu: f64) -> Self {
        if u <= v {
            Edge { u, v, mu }
        } else {
            Edge { u: v, v: u, mu }
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// One broken rule found by [`FuzzyGraph::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    VertexMembership { vertex: usize, nu: f64 },
    SelfLoop { vertex: usize },
    VertexOutOfRange { u: usize, v: usize, n: usize },
    DuplicateEdge { u: usize, v: usize },
    NonPositiveMembership { u: usize, v: usize, mu: f64 },
    MembershipAboveOne { u: usize, v: usize, mu: f64 },
    AxiomViolated { u: usize, v: usize, mu: f64, min_nu: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::VertexMembership { vertex, nu } => {
                write!(f, "vertex {vertex}: ν = {nu} outside [0,1]")
            }
            Violation::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Violation::VertexOutOfRange { u, v, n } => {
                write!(f, "edge ({u},{v}): vertex id out of range for n = {n}")
            }
            Violation::DuplicateEdge { u, v } => write!(f, "duplicate edge ({u},{v})"),
            Violation::NonPositiveMembership { u, v, mu } => {
                write!(f, "edge ({u},{v}): non-positive membership μ = {mu}")
            }
            Violation::MembershipAboveOne { u, v, mu } => {
                write!(f, "edge ({u},{v}): membership out of (0,1], μ = {mu}")
            }
            Violation::AxiomViolated { u, v, mu, min_nu } => {
                write!(f, "edge ({u},{v}): μ > min(ν), {mu} > {min_nu}")
            }
        }
    }
}

/// Fuzzy degrees and the scalar summaries built from them.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeProfile {
    /// Fuzzy degree μ_u per vertex.
    pub degrees: Vec<f64>,
    /// Fuzzy size m_μ.
    pub size: f64,
    /// δ_μ, the smallest fuzzy degree (0 for an edgeless graph).
    pub delta_min: f64,
    /// Δ_μ, the largest fuzzy degree.
    pub delta_max: f64,
    /// Δ(Γ) = max over edges of μ_u + μ_v.
    pub edge_degree_max: f64,
}

impl DegreeProfile {
    /// Smallest strictly positive fuzzy degree, if any vertex has one.
    pub fn min_positive_degree(&self) -> Option<f64> {
        self.degrees
            .iter()
            .copied()
            .filter(|&d| d > 0.0)
            .min_by(f64::total_cmp)
    }

    /// All fuzzy degrees agree within `tol`.
    pub fn is_regular(&self, tol: f64) -> bool {
        self.delta_max - self.delta_min <= tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyGraph {
    nu: Vec<f64>,
    edges: Vec<Edge>,
}

impl FuzzyGraph {
    /// Builds a graph and rejects it unless every invariant holds.
    pub fn new(nu: Vec<f64>, edges: Vec<Edge>) -> Result<Self> {
        let g = Self::from_raw(nu, edges);
        let violations = g.validate();
        if violations.is_empty() {
            Ok(g)
        } else {
            Err(Error::InvalidGraph(violations))
        }
    }

    /// Builds a graph without validation. Endpoints are oriented and edges
    /// sorted, but duplicates, loops and bad memberships are kept so that
    /// [`validate`](Self::validate) can report them.
    pub fn from_raw(nu: Vec<f64>, edges: Vec<Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().map(|e| Edge::new(e.u, e.v, e.mu)).collect();
        edges.sort_by_key(Edge::pair);
        FuzzyGraph { nu, edges }
    }

    /// Graph with ν = 1 on `n` vertices, pairing `pairs[i]` with `mu[i]`.
    pub fn with_unit_vertices(n: usize, pairs: &[(usize, usize)], mu: &[f64]) -> Result<Self> {
        assert_eq!(pairs.len(), mu.len(), "one membership per edge");
        let edges = pairs
            .iter()
            .zip(mu)
            .map(|(&(u, v), &m)| Edge::new(u, v, m))
            .collect();
        Self::new(vec![1.0; n], edges)
    }

    /// Edgeless graph on `n` vertices with ν = 1.
    pub fn empty(n: usize) -> Self {
        FuzzyGraph {
            nu: vec![1.0; n],
            edges: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.nu.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nu(&self) -> &[f64] {
        &self.nu
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn memberships(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.mu).collect()
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(Edge::pair).collect()
    }

    pub fn max_membership(&self) -> f64 {
        self.edges.iter().map(|e| e.mu).fold(0.0, f64::max)
    }

    /// Lists every broken invariant. An empty list means the graph is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.order();
        let mut out = Vec::new();
        for (vertex, &nu) in self.nu.iter().enumerate() {
            if !(0.0..=1.0).contains(&nu) {
                out.push(Violation::VertexMembership { vertex, nu });
            }
        }
        let mut prev: Option<(usize, usize)> = None;
        for e in &self.edges {
            let (u, v, mu) = (e.u, e.v, e.mu);
            if u == v {
                out.push(Violation::SelfLoop { vertex: u });
                continue;
            }
            if v >= n {
                out.push(Violation::VertexOutOfRange { u, v, n });
                continue;
            }
            if prev == Some((u, v)) {
                out.push(Violation::DuplicateEdge { u, v });
            }
            prev = Some((u, v));
            // Written with negations so NaN lands in the error branch.
            if !(mu > 0.0) {
                out.push(Violation::NonPositiveMembership { u, v, mu });
            } else if !(mu <= 1.0) {
                out.push(Violation::MembershipAboveOne { u, v, mu });
            } else {
                let min_nu = self.nu[u].min(self.nu[v]);
                if mu > min_nu {
                    out.push(Violation::AxiomViolated { u, v, mu, min_nu });
                }
            }
        }
        out
    }

    /// Fuzzy degree of every vertex.
    pub fn degrees(&self) -> Vec<f64> {
        let mut d = vec![0.0; self.order()];
        for e in &self.edges {
            d[e.u] += e.mu;
            d[e.v] += e.mu;
        }
        d
    }

    /// Fuzzy size m_μ.
    pub fn size(&self) -> f64 {
        self.edges.iter().map(|e| e.mu).sum()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees = self.degrees();
        let (delta_min, delta_max) = if degrees.is_empty() {
            (0.0, 0.0)
        } else {
            degrees
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &d| (lo.min(d), hi.max(d)))
        };
        let edge_degree_max = self
            .edges
            .iter()
            .map(|e| degrees[e.u] + degrees[e.v])
            .fold(0.0, f64::max);
        DegreeProfile {
            size: self.size(),
            degrees,
            delta_min,
            delta_max,
            edge_degree_max,
        }
    }

    /// Multiplies every edge membership by `t ∈ (0, 1]`.
    pub fn scale_memberships(&self, t: f64) -> Result<Self> {
        if !(t > 0.0 && t <= 1.0) {
            return Err(Error::ScaleOutOfRange(t));
        }
        Ok(FuzzyGraph {
            nu: self.nu.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { mu: t * e.mu, ..*e })
                .collect(),
        })
    }

    /// Same support with every ν and μ set to 1.
    pub fn crisp_support(&self) -> Self {
        FuzzyGraph {
            nu: vec![1.0; self.order()],
            edges: self.edges.iter().map(|e| Edge { mu: 1.0, ..*e }).collect(),
        }
    }

    /// Relabels vertex `i` as `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order(), "permutation length must equal order");
        let mut nu = vec![0.0; self.order()];
        for (i, &p) in perm.iter().enumerate() {
            nu[p] = self.nu[i];
        }
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(perm[e.u], perm[e.v], e.mu))
            .collect();
        Self::from_raw(nu, edges)
    }

    /// Adjacency lists of the support.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order()];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self.order(), &self.pairs())
    }

    /// Support is a tree (connected, n − 1 edges).
    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.edge_count() + 1 == self.order() && self.is_connected()
    }

    /// Support is connected with exactly one cycle.
    pub fn is_unicyclic(&self) -> bool {
        self.order() >= 3 && self.edge_count() == self.order() && self.is_connected()
    }
}

/// Connectivity of the graph on `n` vertices with edge list `pairs`.
pub fn is_connected(n: usize, pairs: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Seeded random fuzzy graph. Each pair becomes an edge with probability
/// `edge_probability`; ν is uniform on [0.5, 1] and μ uniform on
/// (0, min(ν_u, ν_v)], so the result is always valid.
pub fn random_fuzzy_graph(n: usize, edge_probability: f64, seed: u64) -> FuzzyGraph {
    assert!(n >= 1, "random graphs need at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu: Vec<f64> = (0..n).map(|_| 0.5 + 0.5 * rng.random::<f64>()).collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < edge_probability {
                let cap = nu[u].min(nu[v]);
                let mu = (1.0 - rng.random::<f64>()) * cap;
                edges.push(Edge { u, v, mu });
            }
        }
    }
    FuzzyGraph { nu, edges }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(nu_u: f64, nu_v: f64, mu: f64) -> FuzzyGraph {
        FuzzyGraph::from_raw(vec![nu_u, nu_v], vec![Edge::new(0, 1, mu)])
    }

    #[test]
    fn validate_single_edges() {
        assert!(single(1.0, 1.0, 0.5).validate().is_empty());

        let v = single(0.3, 1.0, 0.5).validate();
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0], Violation::AxiomViolated { .. }));
        assert!(v[0].to_string().contains("μ > min(ν)"));

        let v = single(1.0, 1.0, 0.0).validate();
        assert!(matches!(v[0], Violation::NonPositiveMembership { .. }));
        assert!(v[0].to_string().contains("non-positive membership"));
    }

    #[test]
    fn validate_structure() {
        let g = FuzzyGraph::from_raw(
            vec![1.0; 3],
            vec![Edge::new(0, 0, 0.5), Edge::new(1, 0, 0.2), Edge::new(0, 1, 0.3), Edge::new(1, 7, 0.1)],
        );
        let v = g.validate();
        assert!(v.iter().any(|x| matches!(x, Violation::SelfLoop { vertex: 0 })));
        assert!(v.iter().any(|x| matches!(x, Violation::DuplicateEdge { u: 0, v: 1 })));
        assert!(v.iter().any(|x| matches!(x, Violation::VertexOutOfRange { .. })));
        assert!(FuzzyGraph::new(vec![1.0, 1.0], vec![Edge::new(0, 1, f64::NAN)]).is_err());
        assert!(FuzzyGraph::new(vec![1.2], vec![]).is_err());
    }

    #[test]
    fn degrees_of_families() {
        let star = FuzzyGraph::with_unit_vertices(10, &(1..10).map(|i| (0, i)).collect::<Vec<_>>(), &[1.0 / 9.0; 9]).unwrap();
        let p = star.degree_profile();
        assert!((p.degrees[0] - 1.0).abs() < 1e-15);
        assert!((p.delta_max - 1.0).abs() < 1e-15);

        let path = FuzzyGraph::with_unit_vertices(10, &(0..9).map(|i| (i, i + 1)).collect::<Vec<_>>(), &[1.0 / 9.0; 9]).unwrap();
        let d = path.degrees();
        assert!((d[4] - 2.0 / 9.0).abs() < 1e-15);
        assert!((d[0] - 1.0 / 9.0).abs() < 1e-15);

        let lonely = FuzzyGraph::empty(1);
        let p = lonely.degree_profile();
        assert_eq!(p.degrees, vec![0.0]);
        assert_eq!(p.size, 0.0);
        assert_eq!(p.edge_degree_max, 0.0);
    }

    #[test]
    fn scale_memberships_contract() {
        let g = single(1.0, 1.0, 0.6);
        assert_eq!(g.scale_memberships(1.0).unwrap(), g);
        let h = g.scale_memberships(0.5).unwrap();
        assert!((h.edges()[0].mu - 0.3).abs() < 1e-15);
        assert_eq!(h.degrees(), vec![h.edges()[0].mu; 2]);
        assert!(g.scale_memberships(0.0).is_err());
        assert!(g.scale_memberships(1.5).is_err());
        assert!(g.scale_memberships(-0.2).is_err());
    }

    #[test]
    fn crisp_support_keeps_structure() {
        let path = FuzzyGraph::with_unit_vertices(3, &[(0, 1), (1, 2)], &[0.2, 0.7]).unwrap();
        let c = path.crisp_support();
        assert_eq!(c.pairs(), vec![(0, 1), (1, 2)]);
        assert_eq!(c.memberships(), vec![1.0, 1.0]);
        assert_eq!(FuzzyGraph::empty(0).crisp_support(), FuzzyGraph::empty(0));
    }

    #[test]
    fn random_graphs() {
        let one = random_fuzzy_graph(1, 0.7, 3);
        assert_eq!(one.order(), 1);
        assert_eq!(one.edge_count(), 0);
        assert_eq!(random_fuzzy_graph(8, 0.4, 99), random_fuzzy_graph(8, 0.4, 99));
        assert_ne!(random_fuzzy_graph(8, 0.4, 99), random_fuzzy_graph(8, 0.4, 100));
        for seed in 0..20 {
            let g = random_fuzzy_graph(10, 1.0, seed);
            assert_eq!(g.edge_count(), 45);
            assert!(g.validate().is_empty());
        }
    }

    #[test]
    fn structure_predicates() {
        let tri = FuzzyGraph::with_unit_vertices(3, &[(0, 1), (1, 2), (0, 2)], &[0.1; 3]).unwrap();
        assert!(tri.is_unicyclic() && !tri.is_tree());
        let path = FuzzyGraph::with_unit_vertices(3, &[(0, 1), (1, 2)], &[0.1; 2]).unwrap();
        assert!(path.is_tree() && path.is_connected());
        let split = FuzzyGraph::with_unit_vertices(4, &[(0, 1), (2, 3)], &[0.1; 2]).unwrap();
        assert!(!split.is_connected());
    }
}
