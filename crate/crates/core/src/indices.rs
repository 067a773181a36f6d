//! Degree-based fuzzy topological indices.
//!
//! | kind        | value                                        |
//! |-------------|----------------------------------------------|
//! | `Sombor`    | Σ_edges μ(uv)·√(μ_u² + μ_v²)                  |
//! | `SomborAlpha` | Σ_edges (μ(uv)·√(μ_u² + μ_v²))^α            |
//! | `ZagrebM1`  | Σ_vertices μ_u²                              |
//! | `ZagrebM2`  | Σ_edges μ_u·μ_v                              |
//! | `Randic`    | Σ_edges μ(uv) / √(μ_u·μ_v)                   |
//! | `Nirmala`   | Σ_edges (μ_u + μ_v) / √(μ_u·μ_v)             |
//!
//! Here μ_u is the fuzzy degree of `u`. Sums run over stored edges, each
//! unordered pair counted once. Nirmala carries no edge-membership weight.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::FuzzyGraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexKind {
    Sombor,
    SomborAlpha(f64),
    ZagrebM1,
    ZagrebM2,
    Randic,
    Nirmala,
}

impl IndexKind {
    /// General Sombor index with exponent `alpha`; α = 1 is accepted as the
    /// reduction case.
    pub fn sombor_alpha(alpha: f64) -> Result<Self> {
        if alpha >= 1.0 && alpha.is_finite() {
            Ok(IndexKind::SomborAlpha(alpha))
        } else {
            Err(Error::AlphaOutOfRange(alpha))
        }
    }

    /// Parses the CLI spelling (`so`, `so-alpha`, `m1`, `m2`, `randic`, `nirmala`).
    pub fn parse(name: &str, alpha: Option<f64>) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "so" | "sombor" => Ok(IndexKind::Sombor),
            "so-alpha" | "so_alpha" | "soalpha" => {
                Self::sombor_alpha(alpha.ok_or_else(|| Error::InvalidTask("so-alpha needs --alpha".into()))?)
            }
            "m1" | "zagreb-m1" => Ok(IndexKind::ZagrebM1),
            "m2" | "zagreb-m2" => Ok(IndexKind::ZagrebM2),
            "r" | "randic" => Ok(IndexKind::Randic),
            "n" | "nirmala" => Ok(IndexKind::Nirmala),
            other => Err(Error::InvalidTask(format!("unknown index '{other}'"))),
        }
    }

    pub fn short_name(&self) -> String {
        match self {
            IndexKind::Sombor => "SO".into(),
            IndexKind::SomborAlpha(a) => format!("SO_alpha({a})"),
            IndexKind::ZagrebM1 => "M1".into(),
            IndexKind::ZagrebM2 => "M2".into(),
            IndexKind::Randic => "R".into(),
            IndexKind::Nirmala => "N".into(),
        }
    }
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.short_name())
    }
}

/// Where a materialised term comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermSite {
    Edge(usize, usize),
    Vertex(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexValue {
    pub kind: IndexKind,
    pub value: f64,
    /// Per-edge terms in canonical edge order (per-vertex for M1), when requested.
    pub terms: Option<Vec<(TermSite, f64)>>,
}

fn sombor_term(mu: f64, du: f64, dv: f64) -> f64 {
    mu * du.hypot(dv)
}

/// Term list for `kind`, in canonical edge (or vertex) order.
fn term_list(g: &FuzzyGraph, kind: IndexKind) -> Vec<(TermSite, f64)> {
    let d = g.degrees();
    if kind == IndexKind::ZagrebM1 {
        return d.iter().enumerate().map(|(u, &x)| (TermSite::Vertex(u), x * x)).collect();
    }
    g.edges()
        .iter()
        .map(|e| {
            let (du, dv) = (d[e.u], d[e.v]);
            let t = match kind {
                IndexKind::Sombor => sombor_term(e.mu, du, dv),
                IndexKind::SomborAlpha(a) => sombor_term(e.mu, du, dv).powf(a),
                IndexKind::ZagrebM2 => du * dv,
                IndexKind::Randic => {
                    debug_assert!(du > 0.0 && dv > 0.0, "edge endpoint with zero fuzzy degree");
                    e.mu / (du * dv).sqrt()
                }
                IndexKind::Nirmala => {
                    debug_assert!(du > 0.0 && dv > 0.0, "edge endpoint with zero fuzzy degree");
                    (du + dv) / (du * dv).sqrt()
                }
                IndexKind::ZagrebM1 => unreachable!(),
            };
            (TermSite::Edge(e.u, e.v), t)
        })
        .collect()
}

/// Value of `kind` on `g`.
pub fn evaluate(g: &FuzzyGraph, kind: IndexKind) -> f64 {
    term_list(g, kind).iter().map(|(_, t)| t).sum()
}

/// Value of `kind` on `g` together with its terms.
pub fn evaluate_with_terms(g: &FuzzyGraph, kind: IndexKind) -> IndexValue {
    let terms = term_list(g, kind);
    IndexValue {
        kind,
        value: terms.iter().map(|(_, t)| t).sum(),
        terms: Some(terms),
    }
}

fn plain(g: &FuzzyGraph, kind: IndexKind) -> IndexValue {
    IndexValue {
        kind,
        value: evaluate(g, kind),
        terms: None,
    }
}

/// Fuzzy Sombor index SO^μ.
pub fn sombor(g: &FuzzyGraph) -> IndexValue {
    plain(g, IndexKind::Sombor)
}

/// General fuzzy Sombor index SO^μ_α. Rejects α < 1.
pub fn sombor_alpha(g: &FuzzyGraph, alpha: f64) -> Result<IndexValue> {
    let kind = IndexKind::sombor_alpha(alpha)?;
    if alpha == 1.0 {
        return Ok(IndexValue { kind, ..sombor(g) });
    }
    Ok(plain(g, kind))
}

pub fn zagreb_m1(g: &FuzzyGraph) -> IndexValue {
    plain(g, IndexKind::ZagrebM1)
}

pub fn zagreb_m2(g: &FuzzyGraph) -> IndexValue {
    plain(g, IndexKind::ZagrebM2)
}

pub fn randic(g: &FuzzyGraph) -> IndexValue {
    plain(g, IndexKind::Randic)
}

pub fn nirmala(g: &FuzzyGraph) -> IndexValue {
    plain(g, IndexKind::Nirmala)
}

/// Exact partial derivatives ∂SO^μ/∂μ(e) for every edge, in canonical order.
///
/// Raising μ(e) for e = ab changes the direct term of `e` and, through the
/// fuzzy degrees of `a` and `b`, every term of an edge incident to either:
///
/// ∂SO/∂μ(ab) = s_ab + μ_a·w_a + μ_b·w_b,  with s_xy = √(μ_x² + μ_y²)
/// and w_x = Σ_{f ∋ x} μ(f)/s_f.
pub fn sombor_gradient(g: &FuzzyGraph) -> Vec<((usize, usize), f64)> {
    let grad = sombor_gradient_values(g.order(), &g.pairs(), &g.memberships());
    g.pairs().into_iter().zip(grad).collect()
}

/// Same as [`sombor_gradient`] on raw slices; used by the optimiser.
pub(crate) fn sombor_gradient_values(n: usize, pairs: &[(usize, usize)], mu: &[f64]) -> Vec<f64> {
    let mut d = vec![0.0; n];
    for (&(u, v), &m) in pairs.iter().zip(mu) {
        d[u] += m;
        d[v] += m;
    }
    let s: Vec<f64> = pairs.iter().map(|&(u, v)| d[u].hypot(d[v])).collect();
    let mut w = vec![0.0; n];
    for ((&(u, v), &m), &sf) in pairs.iter().zip(mu).zip(&s) {
        if sf > 0.0 {
            w[u] += m / sf;
            w[v] += m / sf;
        }
    }
    pairs
        .iter()
        .zip(&s)
        .map(|(&(a, b), &sab)| sab + d[a] * w[a] + d[b] * w[b])
        .collect()
}

/// SO^μ on raw slices with ν = 1 implied.
pub(crate) fn sombor_values(n: usize, pairs: &[(usize, usize)], mu: &[f64]) -> f64 {
    let mut d = vec![0.0; n];
    for (&(u, v), &m) in pairs.iter().zip(mu) {
        d[u] += m;
        d[v] += m;
    }
    pairs
        .iter()
        .zip(mu)
        .map(|(&(u, v), &m)| sombor_term(m, d[u], d[v]))
        .sum()
}
