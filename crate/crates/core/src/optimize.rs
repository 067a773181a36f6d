//! Edge-membership optimisation on a fixed support at fixed fuzzy size.
//!
//! The feasible set is the membership simplex slice
//! `{μ ∈ [ε, 1]^E : Σ μ = m_μ}`. Supports with at most
//! [`GRID_EDGE_LIMIT`] edges are searched exhaustively on a grid and then
//! polished with projected gradient steps; larger supports use multi-start
//! projected gradient. Everything is deterministic for a fixed config.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumerate::Support;
use crate::error::{Error, Result};
use crate::graph::{Edge, FuzzyGraph};
use crate::indices::{self, IndexKind};

/// Supports with at most this many edges take the grid route.
pub const GRID_EDGE_LIMIT: usize = 4;

const BOUNDARY_TOL: f64 = 1e-9;
const FD_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

impl Direction {
    /// True when `a` is strictly better than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Direction::Min => a < b,
            Direction::Max => a > b,
        }
    }

    fn sign(self) -> f64 {
        match self {
            Direction::Min => 1.0,
            Direction::Max => -1.0,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Min => "min",
            Direction::Max => "max",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(Direction::Min),
            "max" => Ok(Direction::Max),
            other => Err(Error::InvalidTask(format!("unknown direction '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizerConfig {
    /// Lower bound ε on every membership; keeps the support fixed.
    pub epsilon_min: f64,
    /// Grid points per free dimension on small supports.
    pub grid_resolution: usize,
    pub gradient_steps: usize,
    /// Initial step length; halved on failed Armijo tests.
    pub step_size: f64,
    /// Random restarts on top of the uniform and vertex starts.
    pub restarts: usize,
    /// Stop once the objective improves by less than this.
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            epsilon_min: 1e-6,
            grid_resolution: 21,
            gradient_steps: 2000,
            step_size: 0.01,
            restarts: 8,
            tolerance: 1e-8,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Forced,
    Grid,
    Gradient,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Forced => "forced",
            Method::Grid => "grid",
            Method::Gradient => "gradient",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Uniform,
    /// All spare mass on one edge.
    Vertex(usize),
    Random(usize),
    GridBest,
}

/// Outcome of one local run.
#[derive(Debug, Clone, PartialEq)]
pub struct RestartTrace {
    pub start: Start,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    /// Best memberships, aligned with the support's edge order.
    pub memberships: Vec<f64>,
    pub value: f64,
    pub method: Method,
    /// Some membership sits on ε or on 1.
    pub boundary: bool,
    /// The run that produced the optimum met the tolerance.
    pub converged: bool,
    pub restarts: Vec<RestartTrace>,
}

/// Objective on a fixed support with ν = 1.
struct Objective<'a> {
    n: usize,
    pairs: &'a [(usize, usize)],
    kind: IndexKind,
}

impl Objective<'_> {
    fn value(&self, mu: &[f64]) -> f64 {
        if self.kind == IndexKind::Sombor {
            return indices::sombor_values(self.n, self.pairs, mu);
        }
        let edges = self.pairs.iter().zip(mu).map(|(&(u, v), &m)| Edge { u, v, mu: m }).collect();
        indices::evaluate(&FuzzyGraph::from_raw(vec![1.0; self.n], edges), self.kind)
    }

    fn gradient(&self, mu: &[f64]) -> Vec<f64> {
        if self.kind == IndexKind::Sombor {
            return indices::sombor_gradient_values(self.n, self.pairs, mu);
        }
        let mut x = mu.to_vec();
        (0..mu.len())
            .map(|i| {
                let h = FD_STEP.min(0.5 * mu[i]);
                x[i] = mu[i] + h;
                let up = self.value(&x);
                x[i] = mu[i] - h;
                let dn = self.value(&x);
                x[i] = mu[i];
                (up - dn) / (2.0 * h)
            })
            .collect()
    }
}

/// Euclidean projection onto `{x : Σx = total, lo ≤ x ≤ hi}`.
///
/// Solves Σ clip(y − τ, lo, hi) = total for the shift τ by bisection and
/// then spreads the rounding residue over coordinates strictly inside the box.
pub fn project_box_simplex(y: &[f64], total: f64, lo: f64, hi: f64) -> Vec<f64> {
    let k = y.len();
    assert!(k > 0);
    debug_assert!(lo * k as f64 <= total + 1e-12 && total <= hi * k as f64 + 1e-12);
    let clipped_sum = |tau: f64| y.iter().map(|&v| (v - tau).clamp(lo, hi)).sum::<f64>();
    let ymin = y.iter().copied().fold(f64::INFINITY, f64::min);
    let ymax = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    // clipped_sum is non-increasing in τ
    let (mut a, mut b) = (ymin - hi, ymax - lo);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if clipped_sum(mid) > total {
            a = mid;
        } else {
            b = mid;
        }
    }
    let tau = 0.5 * (a + b);
    let mut x: Vec<f64> = y.iter().map(|&v| (v - tau).clamp(lo, hi)).collect();
    for _ in 0..4 {
        let residue = total - x.iter().sum::<f64>();
        if residue == 0.0 {
            break;
        }
        let free: Vec<usize> = (0..k)
            .filter(|&i| if residue > 0.0 { x[i] < hi } else { x[i] > lo })
            .collect();
        if free.is_empty() {
            break;
        }
        let share = residue / free.len() as f64;
        for i in free {
            x[i] = (x[i] + share).clamp(lo, hi);
        }
    }
    x
}

fn check_feasible(edges: usize, m_mu: f64, cfg: &OptimizerConfig) -> Result<()> {
    if edges == 0 {
        return Err(Error::Infeasible("support has no edges".into()));
    }
    let k = edges as f64;
    if !(cfg.epsilon_min > 0.0) {
        return Err(Error::Infeasible(format!("epsilon_min must be positive, got {}", cfg.epsilon_min)));
    }
    if edges == 1 {
        if m_mu >= cfg.epsilon_min && m_mu <= 1.0 {
            return Ok(());
        }
    } else if cfg.epsilon_min * k < m_mu && m_mu <= k {
        return Ok(());
    }
    Err(Error::Infeasible(format!(
        "no memberships in [{}, 1]^{edges} sum to {m_mu}",
        cfg.epsilon_min
    )))
}

fn is_boundary(mu: &[f64], cfg: &OptimizerConfig) -> bool {
    mu.len() > 1
        && mu
            .iter()
            .any(|&m| m - cfg.epsilon_min <= BOUNDARY_TOL || 1.0 - m <= BOUNDARY_TOL)
}

/// Projected gradient descent on `sign·f` from `start`.
fn local_run(obj: &Objective, start: Vec<f64>, m_mu: f64, dir: Direction, cfg: &OptimizerConfig) -> (Vec<f64>, f64, usize, bool) {
    let s = dir.sign();
    let eps = cfg.epsilon_min;
    let mut x = project_box_simplex(&start, m_mu, eps, 1.0);
    let mut fx = s * obj.value(&x);
    let mut step = cfg.step_size;
    for it in 0..cfg.gradient_steps {
        let g: Vec<f64> = obj.gradient(&x).into_iter().map(|v| s * v).collect();
        let mut accepted = None;
        for _ in 0..60 {
            let trial: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - step * gi).collect();
            let xn = project_box_simplex(&trial, m_mu, eps, 1.0);
            let fn_ = s * obj.value(&xn);
            let decrease: f64 = g.iter().zip(x.iter().zip(&xn)).map(|(gi, (a, b))| gi * (a - b)).sum();
            if fn_ <= fx - 1e-4 * decrease {
                accepted = Some((xn, fn_));
                break;
            }
            step *= 0.5;
            if step < 1e-16 {
                break;
            }
        }
        let Some((xn, fn_)) = accepted else {
            return (x, s * fx, it, true);
        };
        let gain = fx - fn_;
        let moved = xn != x;
        x = xn;
        fx = fn_;
        if !moved || gain < cfg.tolerance {
            return (x, s * fx, it + 1, true);
        }
        step = (step * 2.0).min(1.0);
    }
    (x, s * fx, cfg.gradient_steps, false)
}

fn pick_best(dir: Direction, runs: Vec<(Start, Vec<f64>, f64, usize, bool)>, method: Method, cfg: &OptimizerConfig) -> Optimum {
    let mut best: Option<usize> = None;
    for (i, r) in runs.iter().enumerate() {
        if best.is_none_or(|b| dir.better(r.2, runs[b].2)) {
            best = Some(i);
        }
    }
    let b = best.expect("at least one run");
    let restarts = runs
        .iter()
        .map(|r| RestartTrace {
            start: r.0,
            value: r.2,
            iterations: r.3,
            converged: r.4,
        })
        .collect();
    let (_, mu, value, _, converged) = runs.into_iter().nth(b).unwrap();
    Optimum {
        boundary: is_boundary(&mu, cfg),
        memberships: mu,
        value,
        method,
        converged,
        restarts,
    }
}

fn forced(obj: &Objective, m_mu: f64) -> Optimum {
    let mu = vec![m_mu];
    Optimum {
        value: obj.value(&mu),
        memberships: mu,
        method: Method::Forced,
        boundary: false,
        converged: true,
        restarts: Vec::new(),
    }
}

/// Exhaustive grid over the free dimensions, then gradient polish of the
/// best grid point and of the uniform point.
pub fn optimize_grid(support: &Support, m_mu: f64, index: IndexKind, dir: Direction, cfg: &OptimizerConfig) -> Result<Optimum> {
    let k = support.edges.len();
    check_feasible(k, m_mu, cfg)?;
    let obj = Objective {
        n: support.n,
        pairs: &support.edges,
        kind: index,
    };
    if k == 1 {
        return Ok(forced(&obj, m_mu));
    }
    let eps = cfg.epsilon_min;
    let res = cfg.grid_resolution.max(2);
    let ticks: Vec<f64> = (0..res).map(|i| eps + (1.0 - eps) * i as f64 / (res - 1) as f64).collect();
    let mut idx = vec![0usize; k - 1];
    let mut point = vec![0.0; k];
    let mut best: Option<(Vec<f64>, f64)> = None;
    'grid: loop {
        for (p, &i) in point.iter_mut().zip(&idx) {
            *p = ticks[i];
        }
        let last = m_mu - point[..k - 1].iter().sum::<f64>();
        if (eps..=1.0).contains(&last) {
            point[k - 1] = last;
            let v = obj.value(&point);
            if best.as_ref().is_none_or(|b| dir.better(v, b.1)) {
                best = Some((point.clone(), v));
            }
        }
        for d in 0..k - 1 {
            idx[d] += 1;
            if idx[d] < res {
                continue 'grid;
            }
            idx[d] = 0;
        }
        break;
    }
    let uniform = vec![m_mu / k as f64; k];
    let mut runs = Vec::new();
    let (x, v, it, c) = local_run(&obj, uniform, m_mu, dir, cfg);
    runs.push((Start::Uniform, x, v, it, c));
    if let Some((p, _)) = best {
        let (x, v, it, c) = local_run(&obj, p, m_mu, dir, cfg);
        runs.push((Start::GridBest, x, v, it, c));
    }
    Ok(pick_best(dir, runs, Method::Grid, cfg))
}

/// Multi-start projected gradient: uniform start, one vertex start per edge,
/// and `cfg.restarts` random starts.
pub fn optimize_gradient(support: &Support, m_mu: f64, index: IndexKind, dir: Direction, cfg: &OptimizerConfig) -> Result<Optimum> {
    let k = support.edges.len();
    check_feasible(k, m_mu, cfg)?;
    let obj = Objective {
        n: support.n,
        pairs: &support.edges,
        kind: index,
    };
    if k == 1 {
        return Ok(forced(&obj, m_mu));
    }
    let eps = cfg.epsilon_min;
    let mut starts: Vec<(Start, Vec<f64>)> = vec![(Start::Uniform, vec![m_mu / k as f64; k])];
    for e in 0..k {
        let mut x = vec![eps; k];
        x[e] = m_mu;
        starts.push((Start::Vertex(e), x));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for r in 0..cfg.restarts {
        let x: Vec<f64> = (0..k).map(|_| rng.random::<f64>()).collect();
        let scale = m_mu / x.iter().sum::<f64>();
        starts.push((Start::Random(r), x.into_iter().map(|v| v * scale).collect()));
    }
    let runs = starts
        .into_iter()
        .map(|(s, x0)| {
            let (x, v, it, c) = local_run(&obj, x0, m_mu, dir, cfg);
            (s, x, v, it, c)
        })
        .collect();
    Ok(pick_best(dir, runs, Method::Gradient, cfg))
}

/// Best memberships on `support` at fuzzy size `m_mu` for `index` in direction `dir`.
pub fn optimize_memberships(support: &Support, m_mu: f64, index: IndexKind, dir: Direction, cfg: &OptimizerConfig) -> Result<Optimum> {
    if support.edges.len() <= GRID_EDGE_LIMIT {
        optimize_grid(support, m_mu, index, dir, cfg)
    } else {
        optimize_gradient(support, m_mu, index, dir, cfg)
    }
}
