//! Standard fuzzy-graph families (path, star, cycle, complete) and the
//! closed-form Sombor values for their uniform-membership members.
//!
//! All families carry ν = 1 on every vertex.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::FuzzyGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Path,
    Star,
    Cycle,
    Complete,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Path, Family::Star, Family::Cycle, Family::Complete];

    pub fn min_order(self) -> usize {
        match self {
            Family::Cycle => 3,
            _ => 2,
        }
    }

    pub fn edge_count(self, n: usize) -> usize {
        match self {
            Family::Path | Family::Star => n - 1,
            Family::Cycle => n,
            Family::Complete => n * (n - 1) / 2,
        }
    }

    /// Support edges in construction order; custom memberships follow it.
    ///
    /// Path edge i is (i, i+1); star edge i is (0, i+1); the cycle closes
    /// with (n−1, 0); complete edges are listed lexicographically.
    pub fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Family::Path => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::Star => (1..n).map(|i| (0, i)).collect(),
            Family::Cycle => (0..n).map(|i| (i, (i + 1) % n)).collect(),
            Family::Complete => (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Star => "star",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            other => Err(Error::InvalidFamily(format!("unknown family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    /// Every edge gets m_μ / |E|.
    Uniform,
    /// Explicit memberships η_1..η_k in construction order.
    Custom(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub m_mu: f64,
    pub scheme: Scheme,
}

impl FamilySpec {
    pub fn uniform(family: Family, n: usize, m_mu: f64) -> Self {
        FamilySpec {
            family,
            n,
            m_mu,
            scheme: Scheme::Uniform,
        }
    }

    /// Custom scheme; m_μ is taken as the sum of the memberships.
    pub fn custom(family: Family, n: usize, memberships: Vec<f64>) -> Self {
        FamilySpec {
            family,
            n,
            m_mu: memberships.iter().sum(),
            scheme: Scheme::Custom(memberships),
        }
    }

    /// Uniform per-edge membership, when the scheme is uniform.
    pub fn uniform_membership(&self) -> f64 {
        self.m_mu / self.family.edge_count(self.n) as f64
    }

    fn memberships(&self) -> Result<Vec<f64>> {
        let k = self.family.edge_count(self.n);
        let mu = match &self.scheme {
            Scheme::Uniform => {
                if !(self.m_mu > 0.0) {
                    return Err(Error::InvalidFamily(format!("fuzzy size must be positive, got {}", self.m_mu)));
                }
                vec![self.m_mu / k as f64; k]
            }
            Scheme::Custom(eta) => {
                if eta.len() != k {
                    return Err(Error::InvalidFamily(format!(
                        "{} on {} vertices has {k} edges, got {} memberships",
                        self.family,
                        self.n,
                        eta.len()
                    )));
                }
                let sum: f64 = eta.iter().sum();
                if (sum - self.m_mu).abs() > 1e-9 * (1.0 + self.m_mu.abs()) {
                    return Err(Error::InvalidFamily(format!("memberships sum to {sum}, expected m_mu = {}", self.m_mu)));
                }
                eta.clone()
            }
        };
        if let Some(bad) = mu.iter().find(|&&m| !(m > 0.0 && m <= 1.0)) {
            return Err(Error::InvalidFamily(format!("membership {bad} outside (0,1]")));
        }
        Ok(mu)
    }

    /// Builds the fuzzy graph described by this spec.
    pub fn build(&self) -> Result<FuzzyGraph> {
        if self.n < self.family.min_order() {
            return Err(Error::InvalidFamily(format!(
                "{} needs n >= {}, got {}",
                self.family,
                self.family.min_order(),
                self.n
            )));
        }
        let mu = self.memberships()?;
        FuzzyGraph::with_unit_vertices(self.n, &self.family.pairs(self.n), &mu)
    }
}

fn check_membership(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidFamily(format!("membership {p} outside (0,1]")))
    }
}

/// SO of the uniform star with leaf membership `p`: (n−1)p·√(((n−1)p)² + p²).
pub fn closed_form_star(n: usize, p: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidFamily("star needs n >= 2".into()));
    }
    check_membership(p)?;
    let centre = (n - 1) as f64 * p;
    Ok(centre * (centre * centre + p * p).sqrt())
}

/// SO of the uniform complete graph with membership `p`: (√2/2)·n·(n−1)²·p².
pub fn closed_form_complete(n: usize, p: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidFamily("complete graph needs n >= 2".into()));
    }
    check_membership(p)?;
    let (nf, k) = (n as f64, (n - 1) as f64);
    Ok(SQRT_2 / 2.0 * nf * k * k * p * p)
}

/// SO of the uniform cycle with fuzzy size `m_mu`: 2√2·m_μ²/n.
pub fn closed_form_cycle(n: usize, m_mu: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidFamily("cycle needs n >= 3".into()));
    }
    check_membership(m_mu / n as f64)?;
    Ok(2.0 * SQRT_2 * m_mu * m_mu / n as f64)
}

/// SO of the uniform path with fuzzy size `m_mu`.
///
/// With η = m_μ/(n−1): η²·(2√5 + 2√2·(n−3)) for n ≥ 3, and √2·m_μ² for n = 2.
pub fn closed_form_path_uniform(n: usize, m_mu: f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidFamily("path needs n >= 2".into()));
    }
    let eta = m_mu / (n - 1) as f64;
    check_membership(eta)?;
    if n == 2 {
        return Ok(SQRT_2 * m_mu * m_mu);
    }
    Ok(eta * eta * (2.0 * 5f64.sqrt() + 2.0 * SQRT_2 * (n - 3) as f64))
}

/// Upper bound for SO_α on the uniform star, evaluated as printed:
/// (n−1)^α · p · √((n−1)^α·p² + α·p²).
///
/// The printed expression has unbalanced parentheses; this is the reading
/// the crate commits to. Disagreement with a direct evaluation is reported
/// by the claim checker, not corrected here.
pub fn closed_form_star_alpha(n: usize, p: f64, alpha: f64) -> Result<f64> {
    if n < 3 {
        return Err(Error::InvalidFamily("star alpha bound needs n >= 3".into()));
    }
    if !(alpha >= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    check_membership(p)?;
    let k = ((n - 1) as f64).powf(alpha);
    Ok(k * p * (k * p * p + alpha * p * p).sqrt())
}

/// Closed-form SO of the uniform member of `family` at (n, m_μ).
pub fn closed_form_uniform(family: Family, n: usize, m_mu: f64) -> Result<f64> {
    match family {
        Family::Path => closed_form_path_uniform(n, m_mu),
        Family::Star => closed_form_star(n, m_mu / (n.max(2) - 1) as f64),
        Family::Cycle => closed_form_cycle(n, m_mu),
        Family::Complete => closed_form_complete(n, 2.0 * m_mu / (n * n.saturating_sub(1)).max(1) as f64),
    }
}
