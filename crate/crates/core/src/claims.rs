//! Executable versions of the published inequalities and extremal claims.
//!
//! Each [`ClaimId`] evaluates to a left side, a right side and a margin:
//! `rhs − lhs` for upper bounds, `lhs − rhs` for lower bounds, `−|lhs − rhs|`
//! for identities. A claim holds on an instance when its margin is at least
//! `−HOLD_TOLERANCE`. A violated claim is a finding about the statement, not
//! an error in this crate.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::{self, Support};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::families::{self, FamilySpec};
use crate::graph::{self, Edge, FuzzyGraph};
use crate::indices::{self, IndexKind};
use crate::io::write_graph;
use crate::optimize::{self, Direction, OptimizerConfig};
use crate::search::{self, GraphClass, SearchTask};

pub const HOLD_TOLERANCE: f64 = 1e-9;
/// Degrees within this spread count as a regular graph.
pub const REGULAR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    Handshake,
    UpperSqrt2MN1,
    LowerSqrt2MDelta,
    PathMinConnected,
    PathMinTrees,
    StarMaxTrees,
    TreeSandwich,
    KnMax,
    KnAlphaMax,
    CycleMinUnicyclic,
    UnicyclicMax,
    CompleteBounds,
    RandicLower,
    ZagrebUpper,
    ZagrebIrregular,
    NirmalaUpper,
    StarAlphaUpper,
    MatchingMin,
}

impl ClaimId {
    pub const ALL: [ClaimId; 18] = [
        ClaimId::Handshake,
        ClaimId::UpperSqrt2MN1,
        ClaimId::LowerSqrt2MDelta,
        ClaimId::PathMinConnected,
        ClaimId::PathMinTrees,
        ClaimId::StarMaxTrees,
        ClaimId::TreeSandwich,
        ClaimId::KnMax,
        ClaimId::KnAlphaMax,
        ClaimId::CycleMinUnicyclic,
        ClaimId::UnicyclicMax,
        ClaimId::CompleteBounds,
        ClaimId::RandicLower,
        ClaimId::ZagrebUpper,
        ClaimId::ZagrebIrregular,
        ClaimId::NirmalaUpper,
        ClaimId::StarAlphaUpper,
        ClaimId::MatchingMin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimId::Handshake => "HANDSHAKE",
            ClaimId::UpperSqrt2MN1 => "UPPER_SQRT2_M_N1",
            ClaimId::LowerSqrt2MDelta => "LOWER_SQRT2_M_DELTA",
            ClaimId::PathMinConnected => "PATH_MIN_CONNECTED",
            ClaimId::PathMinTrees => "PATH_MIN_TREES",
            ClaimId::StarMaxTrees => "STAR_MAX_TREES",
            ClaimId::TreeSandwich => "TREE_SANDWICH",
            ClaimId::KnMax => "KN_MAX",
            ClaimId::KnAlphaMax => "KN_ALPHA_MAX",
            ClaimId::CycleMinUnicyclic => "CYCLE_MIN_UNICYCLIC",
            ClaimId::UnicyclicMax => "UNICYCLIC_MAX",
            ClaimId::CompleteBounds => "COMPLETE_BOUNDS",
            ClaimId::RandicLower => "RANDIC_LOWER",
            ClaimId::ZagrebUpper => "ZAGREB_UPPER",
            ClaimId::ZagrebIrregular => "ZAGREB_IRREGULAR",
            ClaimId::NirmalaUpper => "NIRMALA_UPPER",
            ClaimId::StarAlphaUpper => "STAR_ALPHA_UPPER",
            ClaimId::MatchingMin => "MATCHING_MIN",
        }
    }

    /// Forms evaluated for this claim. Most claims have one.
    pub fn variants(self) -> &'static [Variant] {
        match self {
            ClaimId::RandicLower => &[Variant::AsPrinted, Variant::DegreeSquared],
            ClaimId::NirmalaUpper => &[Variant::Long, Variant::Reduced],
            _ => &[Variant::Standard],
        }
    }

    /// Claims that [`verify_extremal`] can run.
    pub fn is_extremal(self) -> bool {
        matches!(
            self,
            ClaimId::PathMinTrees
                | ClaimId::StarMaxTrees
                | ClaimId::TreeSandwich
                | ClaimId::CycleMinUnicyclic
                | ClaimId::UnicyclicMax
                | ClaimId::KnMax
                | ClaimId::KnAlphaMax
                | ClaimId::MatchingMin
        )
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        ClaimId::ALL
            .into_iter()
            .find(|c| c.name() == norm)
            .ok_or_else(|| Error::InvalidTask(format!("unknown claim '{s}'")))
    }
}

/// Which form of a claim is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Standard,
    /// Randić relation with δ_μ, as printed.
    AsPrinted,
    /// Randić relation with δ_μ², the form a term-wise bound supports.
    DegreeSquared,
    /// Nirmala bound, long form with the square-root sum.
    Long,
    /// Nirmala bound, reduced form Δ_μ·N/√2.
    Reduced,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::AsPrinted => "as-printed",
            Variant::DegreeSquared => "degree-squared",
            Variant::Long => "long",
            Variant::Reduced => "reduced",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Claim {
    pub id: ClaimId,
    pub variant: Variant,
}

impl Claim {
    /// The claim in its first listed form.
    pub fn new(id: ClaimId) -> Self {
        Claim {
            id,
            variant: id.variants()[0],
        }
    }

    pub fn with_variant(id: ClaimId, variant: Variant) -> Result<Self> {
        if id.variants().contains(&variant) {
            Ok(Claim { id, variant })
        } else {
            Err(Error::InvalidTask(format!("claim {id} has no '{}' form", variant.name())))
        }
    }

    /// Every form of `id`.
    pub fn all_forms(id: ClaimId) -> Vec<Claim> {
        id.variants().iter().map(|&variant| Claim { id, variant }).collect()
    }

    pub fn label(&self) -> String {
        match self.variant {
            Variant::Standard => self.id.name().to_string(),
            v => format!("{}[{}]", self.id.name(), v.name()),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// How the bare symbol `m` in bounds such as √2·m·(n−1) is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MReading {
    /// Fuzzy size m_μ.
    #[default]
    FuzzySize,
    /// Crisp edge count |E|.
    EdgeCount,
}

impl fmt::Display for MReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MReading::FuzzySize => "m=m_mu",
            MReading::EdgeCount => "m=|E|",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub reading_m: MReading,
    /// Exponent for the SO_α claims.
    pub alpha: f64,
    /// Count instances whose hypothesis fails (e.g. a non-regular graph for
    /// ZAGREB_UPPER) instead of setting them aside.
    pub include_unmet_hypothesis: bool,
    pub optimizer: OptimizerConfig,
    pub execution: Execution,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            reading_m: MReading::FuzzySize,
            alpha: 2.0,
            include_unmet_hypothesis: false,
            optimizer: OptimizerConfig::default(),
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub holds: bool,
    /// False when the claim's own hypothesis is not met by the instance.
    pub hypothesis_met: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Evaluated(Evaluation),
    NotApplicable(String),
}

impl Outcome {
    pub fn evaluation(&self) -> Option<&Evaluation> {
        match self {
            Outcome::Evaluated(e) => Some(e),
            Outcome::NotApplicable(_) => None,
        }
    }
}

#[derive(Clone, Copy)]
enum Sense {
    Upper,
    Lower,
    Identity,
}

fn eval(sense: Sense, lhs: f64, rhs: f64, hypothesis_met: bool) -> Outcome {
    let margin = match sense {
        Sense::Upper => rhs - lhs,
        Sense::Lower => lhs - rhs,
        Sense::Identity => -(lhs - rhs).abs(),
    };
    Outcome::Evaluated(Evaluation {
        lhs,
        rhs,
        margin,
        holds: margin >= -HOLD_TOLERANCE,
        hypothesis_met,
    })
}

/// Two-sided check `lo ≤ value ≤ hi`; the reported rhs is the tighter side.
fn sandwich(value: f64, lo: f64, hi: f64, hypothesis_met: bool) -> Outcome {
    let (below, above) = (value - lo, hi - value);
    let (rhs, margin) = if below <= above { (lo, below) } else { (hi, above) };
    Outcome::Evaluated(Evaluation {
        lhs: value,
        rhs,
        margin,
        holds: margin >= -HOLD_TOLERANCE,
        hypothesis_met,
    })
}

fn na(reason: impl Into<String>) -> Outcome {
    Outcome::NotApplicable(reason.into())
}

fn m_symbol(g: &FuzzyGraph, size: f64, reading: MReading) -> f64 {
    match reading {
        MReading::FuzzySize => size,
        MReading::EdgeCount => g.edge_count() as f64,
    }
}

fn uniform_membership(g: &FuzzyGraph) -> Option<f64> {
    let first = g.edges().first()?.mu;
    g.edges()
        .iter()
        .all(|e| (e.mu - first).abs() <= 1e-12 * first.max(1.0))
        .then_some(first)
}

fn is_star_support(g: &FuzzyGraph) -> bool {
    let n = g.order();
    g.is_tree() && n >= 3 && {
        let mut deg = vec![0usize; n];
        for e in g.edges() {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        deg.iter().any(|&d| d + 1 == n)
    }
}

/// Evaluates one claim on one graph.
pub fn check_claim(claim: Claim, g: &FuzzyGraph, cfg: &CheckConfig) -> Outcome {
    let n = g.order();
    let p = g.degree_profile();
    let size = p.size;
    let so = || indices::sombor(g).value;
    let nf = n as f64;
    match claim.id {
        ClaimId::Handshake => eval(Sense::Identity, p.degrees.iter().sum(), 2.0 * size, true),
        ClaimId::UpperSqrt2MN1 => {
            let m = m_symbol(g, size, cfg.reading_m);
            eval(Sense::Upper, so(), SQRT_2 * m * (nf - 1.0), true)
        }
        ClaimId::LowerSqrt2MDelta => eval(Sense::Lower, so(), SQRT_2 * size * p.delta_min, true),
        ClaimId::PathMinConnected | ClaimId::PathMinTrees => {
            let ok = if claim.id == ClaimId::PathMinTrees { g.is_tree() } else { g.is_connected() };
            if n < 2 || g.edge_count() == 0 || !ok {
                return na(if claim.id == ClaimId::PathMinTrees { "support is not a tree" } else { "support is not connected" });
            }
            match families::closed_form_path_uniform(n, size) {
                Ok(path) => eval(Sense::Lower, so(), path, true),
                Err(_) => na("uniform path with this size violates μ ≤ 1"),
            }
        }
        ClaimId::StarMaxTrees => {
            if n < 2 || !g.is_tree() {
                return na("support is not a tree");
            }
            match families::closed_form_star(n, size / (nf - 1.0)) {
                Ok(star) => eval(Sense::Upper, so(), star, true),
                Err(_) => na("uniform star with this size violates μ ≤ 1"),
            }
        }
        ClaimId::TreeSandwich => {
            if n < 2 || !g.is_tree() {
                return na("support is not a tree");
            }
            match (families::closed_form_path_uniform(n, size), families::closed_form_star(n, size / (nf - 1.0))) {
                (Ok(lo), Ok(hi)) => sandwich(so(), lo, hi, true),
                _ => na("uniform path/star with this size violates μ ≤ 1"),
            }
        }
        ClaimId::KnMax => {
            if n < 2 || g.edge_count() == 0 {
                return na("needs at least one edge");
            }
            let bound = families::closed_form_complete(n, g.max_membership()).expect("max membership lies in (0,1]");
            eval(Sense::Upper, so(), bound, true)
        }
        ClaimId::KnAlphaMax => {
            if n < 2 || g.edge_count() == 0 {
                return na("needs at least one edge");
            }
            let c = g.max_membership();
            let pairs = nf * (nf - 1.0) / 2.0;
            let bound = pairs * (SQRT_2 * (nf - 1.0) * c * c).powf(cfg.alpha);
            let lhs = indices::evaluate(g, IndexKind::SomborAlpha(cfg.alpha));
            eval(Sense::Upper, lhs, bound, true)
        }
        ClaimId::CycleMinUnicyclic => {
            if !g.is_unicyclic() {
                return na("support is not unicyclic");
            }
            match families::closed_form_cycle(n, size) {
                Ok(cycle) => eval(Sense::Lower, so(), cycle, true),
                Err(_) => na("uniform cycle with this size violates μ ≤ 1"),
            }
        }
        ClaimId::UnicyclicMax => na("no closed-form maximiser; run verify_extremal"),
        ClaimId::CompleteBounds => {
            if n < 2 || g.edge_count() != n * (n - 1) / 2 || uniform_membership(g).is_none() {
                return na("checked on uniform complete graphs only");
            }
            let lo = SQRT_2 * size * size / (nf - 1.0);
            let hi = SQRT_2 / 2.0 * nf * (nf - 1.0).powi(2) * g.max_membership().powi(2);
            sandwich(so(), lo, hi, true)
        }
        ClaimId::RandicLower => {
            let Some(delta) = p.min_positive_degree() else {
                return na("no positive fuzzy degree");
            };
            let all_positive = p.degrees.iter().all(|&d| d > 0.0);
            let r = indices::randic(g).value;
            let rhs = match claim.variant {
                Variant::DegreeSquared => SQRT_2 * r * delta * delta,
                _ => SQRT_2 * r * delta,
            };
            eval(Sense::Lower, so(), rhs, all_positive)
        }
        ClaimId::ZagrebUpper => {
            let m = m_symbol(g, size, cfg.reading_m);
            let m1 = indices::zagreb_m1(g).value;
            let rhs = SQRT_2 * (((2.0 * nf - 2.0) * m1).sqrt() * size + m * (nf - 1.0));
            eval(Sense::Upper, so(), rhs, p.is_regular(REGULAR_TOLERANCE))
        }
        ClaimId::ZagrebIrregular => {
            let m1 = indices::zagreb_m1(g).value;
            let root = ((2.0 * nf - 2.0) * m1).sqrt();
            let sum: f64 = g
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (p.degrees[e.u], p.degrees[e.v]);
                    e.mu * (a.max(b).powi(2) + a.min(b).powi(2)) * root
                })
                .sum();
            eval(Sense::Upper, so(), 2.0 * size * sum, true)
        }
        ClaimId::NirmalaUpper => {
            if g.edge_count() == 0 {
                return na("needs at least one edge");
            }
            let rhs = match claim.variant {
                Variant::Long => {
                    let inner: f64 = g
                        .edges()
                        .iter()
                        .map(|e| {
                            let (a, b) = (p.degrees[e.u], p.degrees[e.v]);
                            (a + b) * (a * a).max(b * b) / (2.0 * a * b * (a * a).min(b * b))
                        })
                        .sum();
                    size * p.edge_degree_max / SQRT_2 + inner.sqrt()
                }
                _ => p.delta_max / SQRT_2 * indices::nirmala(g).value,
            };
            eval(Sense::Upper, so(), rhs, n >= 3)
        }
        ClaimId::StarAlphaUpper => {
            if !is_star_support(g) {
                return na("support is not a star on n >= 3 vertices");
            }
            let Some(pm) = uniform_membership(g) else {
                return na("star memberships are not uniform");
            };
            let rhs = families::closed_form_star_alpha(n, pm, cfg.alpha).expect("n >= 3 and p in (0,1]");
            eval(Sense::Upper, indices::evaluate(g, IndexKind::SomborAlpha(cfg.alpha)), rhs, true)
        }
        ClaimId::MatchingMin => {
            let k = g.edge_count();
            if k == 0 || 2 * k > n {
                return na("needs 1 <= |E| <= n/2");
            }
            if size / k as f64 > 1.0 {
                return na("uniform matching with this size violates μ ≤ 1");
            }
            eval(Sense::Lower, so(), SQRT_2 * size * size / k as f64, true)
        }
    }
}

/// Outcome of one instance inside a report.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceRecord {
    pub instance: String,
    pub outcome: Outcome,
    /// Graph text for replay, kept for violations.
    pub graph_text: Option<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClaimReport {
    pub claim: Claim,
    /// Instances that were evaluated (applicable, hypothesis met or included).
    pub instances_tested: usize,
    pub holds_count: usize,
    pub violations: Vec<InstanceRecord>,
    pub not_applicable: usize,
    pub hypothesis_unmet: usize,
    /// Smallest margin over tested instances (`+∞` when none were tested).
    pub min_margin: f64,
    pub notes: String,
    pub records: Vec<InstanceRecord>,
}

impl ClaimReport {
    fn from_records(claim: Claim, records: Vec<InstanceRecord>, cfg: &CheckConfig, extra_note: &str) -> Self {
        let mut report = ClaimReport {
            claim,
            instances_tested: 0,
            holds_count: 0,
            violations: Vec::new(),
            not_applicable: 0,
            hypothesis_unmet: 0,
            min_margin: f64::INFINITY,
            notes: String::new(),
            records: Vec::new(),
        };
        for rec in &records {
            match &rec.outcome {
                Outcome::NotApplicable(_) => report.not_applicable += 1,
                Outcome::Evaluated(e) => {
                    if !e.hypothesis_met {
                        report.hypothesis_unmet += 1;
                        if !cfg.include_unmet_hypothesis {
                            continue;
                        }
                    }
                    report.instances_tested += 1;
                    report.min_margin = report.min_margin.min(e.margin);
                    if e.holds {
                        report.holds_count += 1;
                    } else {
                        report.violations.push(rec.clone());
                    }
                }
            }
        }
        report.records = records;
        report.notes = claim_notes(claim, cfg);
        if !extra_note.is_empty() {
            report.notes.push(' ');
            report.notes.push_str(extra_note);
        }
        report
    }

    /// All tested instances hold.
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }

    /// CSV: claim, instance, lhs, rhs, margin, holds (plus applicability).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["claim", "instance", "lhs", "rhs", "margin", "holds", "status"])?;
        for rec in &self.records {
            let label = self.claim.label();
            match &rec.outcome {
                Outcome::Evaluated(e) => {
                    let status = if e.hypothesis_met { "evaluated" } else { "hypothesis-unmet" };
                    w.write_record([
                        label,
                        rec.instance.clone(),
                        e.lhs.to_string(),
                        e.rhs.to_string(),
                        e.margin.to_string(),
                        e.holds.to_string(),
                        status.to_string(),
                    ])?;
                }
                Outcome::NotApplicable(why) => {
                    w.write_record([label, rec.instance.clone(), String::new(), String::new(), String::new(), String::new(), format!("not-applicable: {why}")])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {}/{} hold, {} violations, {} not applicable, {} hypothesis unmet, min margin {:e}\n",
            self.claim.label(),
            self.holds_count,
            self.instances_tested,
            self.violations.len(),
            self.not_applicable,
            self.hypothesis_unmet,
            self.min_margin
        );
        s.push_str(&format!("notes: {}\n", self.notes));
        for v in self.violations.iter().take(5) {
            if let Some(e) = v.outcome.evaluation() {
                s.push_str(&format!("  violation {}: lhs={:.6} rhs={:.6} margin={:e}\n", v.instance, e.lhs, e.rhs, e.margin));
            }
        }
        s
    }
}

fn claim_notes(claim: Claim, cfg: &CheckConfig) -> String {
    match claim.id {
        ClaimId::UpperSqrt2MN1 | ClaimId::ZagrebUpper => format!("reading {}.", cfg.reading_m),
        ClaimId::PathMinConnected => "rhs is the uniform fuzzy path at the same (n, m_mu); violations on non-tree supports are a scope finding.".into(),
        ClaimId::PathMinTrees | ClaimId::StarMaxTrees | ClaimId::TreeSandwich => "bounds are the uniform path/star at the same (n, m_mu).".into(),
        ClaimId::KnMax => "rhs is the uniform complete graph at the instance's largest membership.".into(),
        ClaimId::KnAlphaMax => format!("alpha = {}; rhs is the uniform complete graph at the instance's largest membership.", cfg.alpha),
        ClaimId::CycleMinUnicyclic => "rhs is the uniform cycle at the same (n, m_mu).".into(),
        ClaimId::UnicyclicMax => "predicted winner read as a cycle whose off-cycle vertices are all leaves on one cycle vertex.".into(),
        ClaimId::CompleteBounds => "uniform complete graphs only; both sides checked, rhs is the tighter one.".into(),
        ClaimId::RandicLower => match claim.variant {
            Variant::DegreeSquared => "delta_mu squared form; delta_mu is the smallest positive fuzzy degree.".into(),
            _ => "as printed with delta_mu; delta_mu is the smallest positive fuzzy degree.".into(),
        },
        ClaimId::ZagrebIrregular => "per-edge max/min endpoint degrees.".into(),
        ClaimId::NirmalaUpper => format!("{} form.", claim.variant.name()),
        ClaimId::StarAlphaUpper => format!("alpha = {}; bound evaluated as printed on uniform stars.", cfg.alpha),
        ClaimId::MatchingMin => "among graphs with fixed n, m_mu and k <= n/2 edges; rhs is the uniform k-matching.".into(),
        ClaimId::Handshake | ClaimId::LowerSqrt2MDelta => String::new(),
    }
}

/// Checks `claim` on an explicit instance list.
pub fn verify_instances(claim: Claim, instances: &[(String, FuzzyGraph)], cfg: &CheckConfig) -> ClaimReport {
    let records = exec::map_indexed(cfg.execution, instances, |_, (name, g)| {
        let outcome = check_claim(claim, g, cfg);
        let failed = outcome.evaluation().is_some_and(|e| !e.holds);
        InstanceRecord {
            instance: name.clone(),
            graph_text: failed.then(|| write_graph(g)),
            outcome,
        }
    });
    ClaimReport::from_records(claim, records, cfg, "")
}

/// Shape of random instances drawn for a claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum InstanceShape {
    Any,
    Connected,
    Tree,
    Unicyclic,
    Regular,
    UniformComplete,
    UniformStar,
    Sparse,
}

fn shape_for(claim: ClaimId) -> InstanceShape {
    match claim {
        ClaimId::PathMinConnected => InstanceShape::Connected,
        ClaimId::PathMinTrees | ClaimId::StarMaxTrees | ClaimId::TreeSandwich => InstanceShape::Tree,
        ClaimId::CycleMinUnicyclic | ClaimId::UnicyclicMax => InstanceShape::Unicyclic,
        ClaimId::ZagrebUpper => InstanceShape::Regular,
        ClaimId::CompleteBounds => InstanceShape::UniformComplete,
        ClaimId::StarAlphaUpper => InstanceShape::UniformStar,
        ClaimId::MatchingMin => InstanceShape::Sparse,
        _ => InstanceShape::Any,
    }
}

fn random_memberships(rng: &mut ChaCha8Rng, n: usize, pairs: &[(usize, usize)]) -> FuzzyGraph {
    let nu: Vec<f64> = (0..n).map(|_| 0.5 + 0.5 * rng.random::<f64>()).collect();
    let edges = pairs
        .iter()
        .map(|&(u, v)| Edge::new(u, v, (1.0 - rng.random::<f64>()) * nu[u].min(nu[v])))
        .collect();
    FuzzyGraph::new(nu, edges).expect("memberships respect the axiom by construction")
}

fn random_tree_pairs(rng: &mut ChaCha8Rng, n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|v| (rng.random_range(0..v), v)).collect()
}

fn random_instance(shape: InstanceShape, n: usize, seed: u64) -> FuzzyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match shape {
        InstanceShape::Any => {
            let p = 0.2 + 0.8 * rng.random::<f64>();
            graph::random_fuzzy_graph(n, p, rng.random())
        }
        InstanceShape::Connected => {
            let mut pairs = random_tree_pairs(&mut rng, n);
            let p = 0.5 * rng.random::<f64>();
            for u in 0..n {
                for v in (u + 1)..n {
                    if !pairs.contains(&(u, v)) && rng.random::<f64>() < p {
                        pairs.push((u, v));
                    }
                }
            }
            random_memberships(&mut rng, n, &pairs)
        }
        InstanceShape::Tree => {
            let pairs = random_tree_pairs(&mut rng, n);
            random_memberships(&mut rng, n, &pairs)
        }
        InstanceShape::Unicyclic => {
            let n = n.max(3);
            let mut pairs = random_tree_pairs(&mut rng, n);
            loop {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                let e = (u.min(v), u.max(v));
                if u != v && !pairs.contains(&e) {
                    pairs.push(e);
                    break;
                }
            }
            random_memberships(&mut rng, n, &pairs)
        }
        InstanceShape::Regular => {
            let n = n.max(3);
            let fam = if rng.random::<bool>() { families::Family::Cycle } else { families::Family::Complete };
            let k = fam.edge_count(n) as f64;
            let m = k * (1.0 - rng.random::<f64>());
            FamilySpec::uniform(fam, n, m).build().expect("uniform membership within (0,1]")
        }
        InstanceShape::UniformComplete => {
            let k = (n * (n - 1) / 2) as f64;
            FamilySpec::uniform(families::Family::Complete, n, k * (1.0 - rng.random::<f64>())).build().expect("valid")
        }
        InstanceShape::UniformStar => {
            let n = n.max(3);
            FamilySpec::uniform(families::Family::Star, n, (n - 1) as f64 * (1.0 - rng.random::<f64>())).build().expect("valid")
        }
        InstanceShape::Sparse => {
            let k = rng.random_range(1..=(n / 2).max(1));
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            while pairs.len() < k {
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                let e = (u.min(v), u.max(v));
                if u != v && !pairs.contains(&e) {
                    pairs.push(e);
                }
            }
            random_memberships(&mut rng, n, &pairs)
        }
    }
}

/// Checks `claim` on `samples` seeded random instances with n in `n_range`.
///
/// Instance i is fully determined by `(seed, i)`; its shape (tree, regular,
/// uniform star, ...) is chosen to fit the claim's hypothesis.
pub fn verify_random(claim: Claim, samples: usize, n_range: (usize, usize), seed: u64, cfg: &CheckConfig) -> Result<ClaimReport> {
    let (lo, hi) = n_range;
    if samples == 0 {
        return Err(Error::InvalidTask("samples must be at least 1".into()));
    }
    if lo < 2 || lo > hi {
        return Err(Error::InvalidTask(format!("bad n range {lo}..={hi}")));
    }
    let shape = shape_for(claim.id);
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let plan: Vec<(usize, u64)> = (0..samples).map(|_| (master.random_range(lo..=hi), master.random())).collect();
    let instances: Vec<(String, FuzzyGraph)> = exec::map_indexed(cfg.execution, &plan, |i, &(n, s)| {
        let g = random_instance(shape, n, s);
        (format!("sample-{i}-n{}", g.order()), g)
    });
    Ok(verify_instances(claim, &instances, cfg))
}

fn support_graph(s: &Support, mu: &[f64]) -> FuzzyGraph {
    FuzzyGraph::with_unit_vertices(s.n, &s.edges, mu).expect("optimiser output is feasible")
}

/// Unicyclic support whose off-cycle vertices are all leaves hanging from a
/// single cycle vertex (the bare cycle counts).
pub fn is_cycle_with_star(s: &Support) -> bool {
    if s.edges.len() != s.n || !s.is_connected() {
        return false;
    }
    let mut deg = s.degrees();
    let mut on_cycle = vec![true; s.n];
    let mut leaves: Vec<usize> = (0..s.n).filter(|&v| deg[v] == 1).collect();
    let mut pendant_parent = Vec::new();
    let mut first_layer = true;
    while !leaves.is_empty() {
        let mut next = Vec::new();
        for &leaf in &leaves {
            on_cycle[leaf] = false;
            for &(u, v) in &s.edges {
                let w = if u == leaf { v } else if v == leaf { u } else { continue };
                if on_cycle[w] {
                    if first_layer {
                        pendant_parent.push(w);
                    }
                    deg[w] -= 1;
                    if deg[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        if !next.is_empty() {
            return false;
        }
        first_layer = false;
        leaves = next;
    }
    pendant_parent.sort_unstable();
    pendant_parent.dedup();
    pendant_parent.len() <= 1
}

struct ExtremalRow {
    instance: String,
    predicted_best: f64,
    other_best: Option<f64>,
    winner_shape: String,
}

fn compare_predicted(claim: Claim, rows: Vec<ExtremalRow>, dir: Direction, cfg: &CheckConfig) -> ClaimReport {
    let records = rows
        .into_iter()
        .map(|r| {
            let outcome = match r.other_best {
                None => eval(Sense::Identity, r.predicted_best, r.predicted_best, true),
                Some(other) => match dir {
                    // predicted value (rhs) must not exceed the best other support (lhs)
                    Direction::Min => eval(Sense::Lower, other, r.predicted_best, true),
                    Direction::Max => eval(Sense::Upper, other, r.predicted_best, true),
                },
            };
            InstanceRecord {
                instance: format!("{} winner={}", r.instance, r.winner_shape),
                outcome,
                graph_text: None,
            }
        })
        .collect();
    ClaimReport::from_records(
        claim,
        records,
        cfg,
        "lhs = best optimised value over other supports, rhs = optimised value of the predicted support.",
    )
}

fn class_rows(class: GraphClass, n_range: (usize, usize), m_mu: f64, dir: Direction, predicted: fn(&Support) -> bool, cfg: &CheckConfig) -> Result<Vec<ExtremalRow>> {
    let mut rows = Vec::new();
    for n in n_range.0..=n_range.1 {
        let mut task = SearchTask::new(class, n, m_mu, IndexKind::Sombor, dir);
        task.optimizer = cfg.optimizer.clone();
        let result = search::extremal_search_with(&task, cfg.execution)?;
        let mut pred: Option<f64> = None;
        let mut other: Option<f64> = None;
        for row in &result.rows {
            let Some(o) = &row.optimum else { continue };
            let slot = if predicted(&row.support) { &mut pred } else { &mut other };
            if slot.is_none_or(|v| dir.better(o.value, v)) {
                *slot = Some(o.value);
            }
        }
        let predicted_best = pred.ok_or_else(|| Error::Infeasible(format!("predicted support infeasible at n = {n}")))?;
        rows.push(ExtremalRow {
            instance: format!("n={n} m_mu={m_mu}"),
            predicted_best,
            other_best: other,
            winner_shape: result.winner_support().shape().to_string(),
        });
    }
    Ok(rows)
}

fn check_caps(n_range: (usize, usize), lo: usize, hi: usize) -> Result<()> {
    let (a, b) = n_range;
    if a < lo || b > hi || a > b {
        return Err(Error::OrderOutOfRange {
            what: "extremal verification",
            n: if a < lo || a > b { a } else { b },
            min: lo,
            max: hi,
        });
    }
    Ok(())
}

/// Edge-budget sweep for KN_MAX / KN_ALPHA_MAX: each connected support gets
/// memberships averaging `p` (budget p·|E|), optimised for the maximum.
const KN_SWEEP: [f64; 3] = [0.25, 0.5, 1.0];

/// Runs an extremal claim through exhaustive enumeration and the optimiser.
pub fn verify_extremal(claim: Claim, n_range: (usize, usize), m_mu: f64, cfg: &CheckConfig) -> Result<ClaimReport> {
    if !claim.id.is_extremal() {
        return Err(Error::InvalidTask(format!("{} is not an extremal claim", claim.id)));
    }
    match claim.id {
        ClaimId::PathMinTrees => {
            check_caps(n_range, 2, enumerate::MAX_TREE_ORDER)?;
            let rows = class_rows(GraphClass::Tree, n_range, m_mu, Direction::Min, Support::is_path, cfg)?;
            Ok(compare_predicted(claim, rows, Direction::Min, cfg))
        }
        ClaimId::StarMaxTrees => {
            check_caps(n_range, 2, enumerate::MAX_TREE_ORDER)?;
            let rows = class_rows(GraphClass::Tree, n_range, m_mu, Direction::Max, Support::is_star, cfg)?;
            Ok(compare_predicted(claim, rows, Direction::Max, cfg))
        }
        ClaimId::CycleMinUnicyclic => {
            check_caps(n_range, 3, enumerate::MAX_UNICYCLIC_ORDER)?;
            let rows = class_rows(GraphClass::Unicyclic, n_range, m_mu, Direction::Min, Support::is_cycle, cfg)?;
            Ok(compare_predicted(claim, rows, Direction::Min, cfg))
        }
        ClaimId::UnicyclicMax => {
            check_caps(n_range, 3, enumerate::MAX_UNICYCLIC_ORDER)?;
            let rows = class_rows(GraphClass::Unicyclic, n_range, m_mu, Direction::Max, is_cycle_with_star, cfg)?;
            Ok(compare_predicted(claim, rows, Direction::Max, cfg))
        }
        ClaimId::TreeSandwich => {
            check_caps(n_range, 2, enumerate::MAX_TREE_ORDER)?;
            let mut instances = Vec::new();
            for n in n_range.0..=n_range.1 {
                for (i, t) in enumerate::enumerate_trees(n)?.into_iter().enumerate() {
                    let mu = vec![m_mu / (n - 1) as f64; n - 1];
                    if mu[0] > 1.0 {
                        return Err(Error::Infeasible(format!("uniform membership {} > 1 at n = {n}", mu[0])));
                    }
                    instances.push((format!("n={n} tree#{i} {}", t.shape()), support_graph(&t, &mu)));
                }
            }
            let mut report = verify_instances(claim, &instances, cfg);
            report.notes.push_str(" instances: every enumerated tree with uniform memberships.");
            Ok(report)
        }
        ClaimId::KnMax | ClaimId::KnAlphaMax => {
            check_caps(n_range, 2, enumerate::MAX_CONNECTED_ORDER)?;
            let kind = if claim.id == ClaimId::KnMax { IndexKind::Sombor } else { IndexKind::SomborAlpha(cfg.alpha) };
            let mut rows = Vec::new();
            for n in n_range.0..=n_range.1 {
                let supports = enumerate::enumerate_connected(n)?;
                for &p in &KN_SWEEP {
                    let values = exec::map_indexed(cfg.execution, &supports, |_, s| {
                        optimize::optimize_memberships(s, p * s.edges.len() as f64, kind, Direction::Max, &cfg.optimizer).map(|o| o.value)
                    });
                    let mut pred = None;
                    let mut other: Option<f64> = None;
                    let mut winner = ("", f64::NEG_INFINITY);
                    for (s, v) in supports.iter().zip(values) {
                        let v = v?;
                        if v > winner.1 {
                            winner = (s.shape(), v);
                        }
                        if s.is_complete() {
                            pred = Some(v);
                        } else if other.is_none_or(|o| v > o) {
                            other = Some(v);
                        }
                    }
                    rows.push(ExtremalRow {
                        instance: format!("n={n} p={p}"),
                        predicted_best: pred.expect("complete graph is connected"),
                        other_best: other,
                        winner_shape: winner.0.to_string(),
                    });
                }
            }
            let mut report = compare_predicted(claim, rows, Direction::Max, cfg);
            report.notes.push_str(" each support's budget is p*|E|, memberships capped at 1.");
            Ok(report)
        }
        ClaimId::MatchingMin => {
            check_caps(n_range, 2, 6)?;
            let mut rows = Vec::new();
            for n in n_range.0..=n_range.1 {
                for k in 1..=n / 2 {
                    if m_mu > k as f64 {
                        continue;
                    }
                    let supports = enumerate::enumerate_with_edges(n, k)?;
                    let mut task = SearchTask::new(GraphClass::Connected, n, m_mu, IndexKind::Sombor, Direction::Min);
                    task.optimizer = cfg.optimizer.clone();
                    let result = search::search_supports(&task, supports, cfg.execution)?;
                    let mut pred = None;
                    let mut other: Option<f64> = None;
                    for row in &result.rows {
                        let Some(o) = &row.optimum else { continue };
                        if row.support.is_matching() {
                            pred = Some(o.value);
                        } else if other.is_none_or(|v| o.value < v) {
                            other = Some(o.value);
                        }
                    }
                    rows.push(ExtremalRow {
                        instance: format!("n={n} k={k} m_mu={m_mu}"),
                        predicted_best: pred.expect("k <= n/2 admits a matching"),
                        other_best: other,
                        winner_shape: result.winner_support().shape().to_string(),
                    });
                }
            }
            Ok(compare_predicted(claim, rows, Direction::Min, cfg))
        }
        _ => unreachable!("guarded by is_extremal"),
    }
}

/// One grid point of a margin sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: families::Family,
    pub n: usize,
    pub m_mu: f64,
    pub outcome: Outcome,
}

/// Evaluates `claim` on each uniform family member of `grid`.
pub fn margin_sweep(claim: Claim, grid: &[FamilySpec], cfg: &CheckConfig) -> Result<Vec<SweepRow>> {
    let built = exec::map_indexed(cfg.execution, grid, |_, spec| spec.build().map(|g| check_claim(claim, &g, cfg)));
    grid.iter()
        .zip(built)
        .map(|(spec, outcome)| {
            Ok(SweepRow {
                family: spec.family,
                n: spec.n,
                m_mu: spec.m_mu,
                outcome: outcome?,
            })
        })
        .collect()
}

pub fn write_sweep_csv<W: Write>(claim: Claim, rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["claim", "family", "n", "m_mu", "lhs", "rhs", "margin", "holds"])?;
    for r in rows {
        let (lhs, rhs, margin, holds) = match &r.outcome {
            Outcome::Evaluated(e) => (e.lhs.to_string(), e.rhs.to_string(), e.margin.to_string(), e.holds.to_string()),
            Outcome::NotApplicable(_) => (String::new(), String::new(), String::new(), "not-applicable".into()),
        };
        w.write_record([claim.label(), r.family.to_string(), r.n.to_string(), r.m_mu.to_string(), lhs, rhs, margin, holds])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::Family;
    use approx::assert_abs_diff_eq;

    fn uniform(f: Family, n: usize, m: f64) -> FuzzyGraph {
        FamilySpec::uniform(f, n, m).build().unwrap()
    }

    fn evaluated(o: Outcome) -> Evaluation {
        *o.evaluation().expect("claim should apply")
    }

    #[test]
    fn lower_bound_tight_on_regular_cycle() {
        let e = evaluated(check_claim(Claim::new(ClaimId::LowerSqrt2MDelta), &uniform(Family::Cycle, 10, 1.0), &CheckConfig::default()));
        assert_abs_diff_eq!(e.lhs, 0.2828, epsilon = 5e-5);
        assert_abs_diff_eq!(e.rhs, SQRT_2 * 0.2, epsilon = 1e-15);
        assert!(e.margin.abs() <= 1e-12 && e.holds);
    }

    #[test]
    fn upper_bound_on_star() {
        let e = evaluated(check_claim(Claim::new(ClaimId::UpperSqrt2MN1), &uniform(Family::Star, 10, 1.0), &CheckConfig::default()));
        assert_abs_diff_eq!(e.rhs, SQRT_2 * 9.0, epsilon = 1e-12);
        assert_eq!((e.rhs * 1e4).round() / 1e4, 12.7279);
        assert!(e.holds);
        let cfg = CheckConfig {
            reading_m: MReading::EdgeCount,
            ..Default::default()
        };
        let e = evaluated(check_claim(Claim::new(ClaimId::UpperSqrt2MN1), &uniform(Family::Star, 10, 1.0), &cfg));
        assert_abs_diff_eq!(e.rhs, SQRT_2 * 81.0, epsilon = 1e-12);
    }

    #[test]
    fn nirmala_reduced_on_star() {
        let claim = Claim::with_variant(ClaimId::NirmalaUpper, Variant::Reduced).unwrap();
        let e = evaluated(check_claim(claim, &uniform(Family::Star, 10, 1.0), &CheckConfig::default()));
        assert_abs_diff_eq!(e.rhs, 30.0 / SQRT_2, epsilon = 1e-12);
        assert_eq!((e.rhs * 1e4).round() / 1e4, 21.2132);
        assert!(e.holds);
        assert!(Claim::with_variant(ClaimId::Handshake, Variant::Long).is_err());
    }

    #[test]
    fn path_min_connected_fails_on_cycle() {
        let e = evaluated(check_claim(Claim::new(ClaimId::PathMinConnected), &uniform(Family::Cycle, 10, 1.0), &CheckConfig::default()));
        assert_eq!((e.lhs * 1e4).round() / 1e4, 0.2828);
        assert_eq!((e.rhs * 1e4).round() / 1e4, 0.2996);
        assert!(!e.holds);
    }

    #[test]
    fn not_applicable_shapes() {
        let cfg = CheckConfig::default();
        let cycle = uniform(Family::Cycle, 6, 1.0);
        assert!(matches!(check_claim(Claim::new(ClaimId::TreeSandwich), &cycle, &cfg), Outcome::NotApplicable(_)));
        assert!(matches!(check_claim(Claim::new(ClaimId::StarAlphaUpper), &cycle, &cfg), Outcome::NotApplicable(_)));
        assert!(matches!(check_claim(Claim::new(ClaimId::CompleteBounds), &cycle, &cfg), Outcome::NotApplicable(_)));
        assert!(matches!(check_claim(Claim::new(ClaimId::UnicyclicMax), &cycle, &cfg), Outcome::NotApplicable(_)));
    }

    #[test]
    fn zagreb_upper_flags_irregular_inputs() {
        let cfg = CheckConfig::default();
        let e = evaluated(check_claim(Claim::new(ClaimId::ZagrebUpper), &uniform(Family::Star, 6, 1.0), &cfg));
        assert!(!e.hypothesis_met);
        let e = evaluated(check_claim(Claim::new(ClaimId::ZagrebUpper), &uniform(Family::Cycle, 6, 1.0), &cfg));
        assert!(e.hypothesis_met && e.holds);
    }

    #[test]
    fn star_alpha_as_printed_at_alpha_one() {
        let cfg = CheckConfig { alpha: 1.0, ..Default::default() };
        let e = evaluated(check_claim(Claim::new(ClaimId::StarAlphaUpper), &uniform(Family::Star, 10, 1.0), &cfg));
        assert_eq!((e.rhs * 1e4).round() / 1e4, 0.3514);
        assert_eq!((e.lhs * 1e4).round() / 1e4, 1.0062);
        assert!(!e.holds);
    }

    #[test]
    fn claim_names_parse() {
        for id in ClaimId::ALL {
            assert_eq!(id.name().parse::<ClaimId>().unwrap(), id);
        }
        assert_eq!("lower-sqrt2-m-delta".parse::<ClaimId>().unwrap(), ClaimId::LowerSqrt2MDelta);
        assert!("nonsense".parse::<ClaimId>().is_err());
    }

    #[test]
    fn cycle_with_star_shapes() {
        assert!(is_cycle_with_star(&Support::new(3, [(0, 1), (1, 2), (0, 2)])));
        assert!(is_cycle_with_star(&Support::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (0, 4)])));
        assert!(!is_cycle_with_star(&Support::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4)])));
        assert!(!is_cycle_with_star(&Support::new(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4)])));
    }

    #[test]
    fn report_counts_partition() {
        let cfg = CheckConfig::default();
        let r = verify_random(Claim::new(ClaimId::Handshake), 50, (2, 8), 3, &cfg).unwrap();
        assert_eq!(r.instances_tested, 50);
        assert_eq!(r.holds_count + r.violations.len(), r.instances_tested);
        assert!(verify_random(Claim::new(ClaimId::Handshake), 0, (2, 8), 3, &cfg).is_err());
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 51);
    }

    #[test]
    fn margin_sweep_cycle_is_tight() {
        let grid: Vec<FamilySpec> = [6, 8, 10].iter().map(|&n| FamilySpec::uniform(Family::Cycle, n, 0.5)).collect();
        let rows = margin_sweep(Claim::new(ClaimId::LowerSqrt2MDelta), &grid, &CheckConfig::default()).unwrap();
        assert_eq!(rows.len(), 3);
        for r in rows {
            assert!(r.outcome.evaluation().unwrap().margin.abs() < 1e-12);
        }
    }
}
