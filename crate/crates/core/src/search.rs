//! Extremal search: optimise memberships on every support of a graph class
//! and rank the supports.

use std::fmt::{self, Write as _};
use std::io::Write;
use std::str::FromStr;

use crate::enumerate::{self, Support};
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::indices::IndexKind;
use crate::optimize::{self, Direction, Optimum, OptimizerConfig};

/// Values within this distance of the winner are reported as joint winners.
pub const TIE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    Tree,
    Unicyclic,
    Connected,
}

impl GraphClass {
    pub fn supports(self, n: usize) -> Result<Vec<Support>> {
        match self {
            GraphClass::Tree => enumerate::enumerate_trees(n),
            GraphClass::Unicyclic => enumerate::enumerate_unicyclic(n),
            GraphClass::Connected => enumerate::enumerate_connected(n),
        }
    }

    pub fn order_range(self) -> (usize, usize) {
        match self {
            GraphClass::Tree => (2, enumerate::MAX_TREE_ORDER),
            GraphClass::Unicyclic => (3, enumerate::MAX_UNICYCLIC_ORDER),
            GraphClass::Connected => (2, enumerate::MAX_CONNECTED_ORDER),
        }
    }
}

impl fmt::Display for GraphClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphClass::Tree => "tree",
            GraphClass::Unicyclic => "unicyclic",
            GraphClass::Connected => "connected",
        })
    }
}

impl FromStr for GraphClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tree" => Ok(GraphClass::Tree),
            "unicyclic" => Ok(GraphClass::Unicyclic),
            "connected" => Ok(GraphClass::Connected),
            other => Err(Error::InvalidTask(format!("unknown graph class '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchTask {
    pub class: GraphClass,
    pub n: usize,
    pub m_mu: f64,
    pub index: IndexKind,
    pub direction: Direction,
    pub optimizer: OptimizerConfig,
}

impl SearchTask {
    pub fn new(class: GraphClass, n: usize, m_mu: f64, index: IndexKind, direction: Direction) -> Self {
        SearchTask {
            class,
            n,
            m_mu,
            index,
            direction,
            optimizer: OptimizerConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.class.order_range();
        if !(lo..=hi).contains(&self.n) {
            return Err(Error::OrderOutOfRange {
                what: "extremal search",
                n: self.n,
                min: lo,
                max: hi,
            });
        }
        if !(self.m_mu > 0.0) {
            return Err(Error::InvalidTask(format!("fuzzy size must be positive, got {}", self.m_mu)));
        }
        Ok(())
    }
}

/// Optimised result for one support.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportRow {
    /// Position in the class's canonical enumeration order.
    pub id: usize,
    pub support: Support,
    /// `None` when the slice is empty for this support (too few edges for m_μ).
    pub optimum: Option<Optimum>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub task: SearchTask,
    pub rows: Vec<SupportRow>,
    /// Index into `rows` of the winner.
    pub winner: usize,
    /// Rows within [`TIE_TOLERANCE`] of the winner, winner included.
    pub joint_winners: Vec<usize>,
}

impl SearchResult {
    pub fn winner_row(&self) -> &SupportRow {
        &self.rows[self.winner]
    }

    pub fn winner_support(&self) -> &Support {
        &self.winner_row().support
    }

    pub fn winner_optimum(&self) -> &Optimum {
        self.winner_row().optimum.as_ref().expect("winner is feasible")
    }

    pub fn objective_value(&self) -> f64 {
        self.winner_optimum().value
    }

    /// Feasible rows ordered best first; equal values keep canonical order.
    pub fn ranking(&self) -> Vec<&SupportRow> {
        let dir = self.task.direction;
        let mut rows: Vec<&SupportRow> = self.rows.iter().filter(|r| r.optimum.is_some()).collect();
        rows.sort_by(|a, b| {
            let (va, vb) = (a.optimum.as_ref().unwrap().value, b.optimum.as_ref().unwrap().value);
            let ord = va.total_cmp(&vb);
            let ord = if dir == Direction::Max { ord.reverse() } else { ord };
            ord.then(a.id.cmp(&b.id))
        });
        rows
    }

    /// One CSV row per support, canonical order.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "support_id", "shape", "edges", "value", "memberships", "method", "boundary", "converged", "rank", "winner",
        ])?;
        let rank_of: Vec<usize> = {
            let mut r = vec![0; self.rows.len()];
            for (pos, row) in self.ranking().iter().enumerate() {
                r[row.id] = pos + 1;
            }
            r
        };
        for row in &self.rows {
            let mark = if row.id == self.winner {
                "winner"
            } else if self.joint_winners.contains(&row.id) {
                "joint"
            } else {
                ""
            };
            match &row.optimum {
                Some(o) => w.write_record([
                    row.id.to_string(),
                    row.support.shape().to_string(),
                    row.support.edge_list_string(),
                    o.value.to_string(),
                    o.memberships.iter().map(f64::to_string).collect::<Vec<_>>().join(" "),
                    o.method.to_string(),
                    o.boundary.to_string(),
                    o.converged.to_string(),
                    rank_of[row.id].to_string(),
                    mark.to_string(),
                ])?,
                None => w.write_record([
                    row.id.to_string(),
                    row.support.shape().to_string(),
                    row.support.edge_list_string(),
                    String::new(),
                    String::new(),
                    "infeasible".into(),
                    String::new(),
                    String::new(),
                    String::new(),
                    String::new(),
                ])?,
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Plain-text summary.
    pub fn report(&self) -> String {
        let t = &self.task;
        let o = self.winner_optimum();
        let mut s = String::new();
        let _ = writeln!(s, "class={} n={} m_mu={} index={} direction={}", t.class, t.n, t.m_mu, t.index, t.direction);
        let _ = writeln!(s, "supports: {} ({} feasible)", self.rows.len(), self.rows.iter().filter(|r| r.optimum.is_some()).count());
        let _ = writeln!(
            s,
            "winner: #{} {} [{}] value={:.10} boundary={} converged={}",
            self.winner,
            self.winner_support().shape(),
            self.winner_support().edge_list_string(),
            o.value,
            o.boundary,
            o.converged
        );
        let joint: Vec<String> = self.joint_winners.iter().filter(|&&i| i != self.winner).map(|i| format!("#{i}")).collect();
        if !joint.is_empty() {
            let _ = writeln!(s, "joint winners within {TIE_TOLERANCE:e}: {}", joint.join(", "));
        }
        let restarts: Vec<String> = o.restarts.iter().map(|r| format!("{:.10}", r.value)).collect();
        let _ = writeln!(s, "winner restart values: [{}]", restarts.join(", "));
        s
    }
}

/// Runs the search with the default (parallel) execution.
pub fn extremal_search(task: &SearchTask) -> Result<SearchResult> {
    extremal_search_with(task, Execution::default())
}

/// Optimises every support of the task's class, then ranks them.
///
/// Supports are optimised independently; results are merged in canonical
/// order, so the output does not depend on scheduling.
pub fn extremal_search_with(task: &SearchTask, exec: Execution) -> Result<SearchResult> {
    task.validate()?;
    let supports = task.class.supports(task.n)?;
    search_supports(task, supports, exec)
}

/// Ranks an explicit list of supports under `task`'s objective.
pub fn search_supports(task: &SearchTask, supports: Vec<Support>, exec: Execution) -> Result<SearchResult> {
    let outcomes = exec::map_indexed(exec, &supports, |_, s| {
        optimize::optimize_memberships(s, task.m_mu, task.index, task.direction, &task.optimizer)
    });
    let mut rows = Vec::with_capacity(supports.len());
    for (id, (support, outcome)) in supports.into_iter().zip(outcomes).enumerate() {
        let optimum = match outcome {
            Ok(o) => Some(o),
            Err(Error::Infeasible(_)) => None,
            Err(e) => return Err(e),
        };
        rows.push(SupportRow { id, support, optimum });
    }
    let mut winner: Option<(usize, f64)> = None;
    for row in &rows {
        if let Some(o) = &row.optimum {
            if winner.is_none_or(|(_, v)| task.direction.better(o.value, v)) {
                winner = Some((row.id, o.value));
            }
        }
    }
    let (winner, best) = winner.ok_or_else(|| Error::Infeasible(format!("no support of class {} admits m_mu = {}", task.class, task.m_mu)))?;
    let joint_winners = rows
        .iter()
        .filter(|r| r.optimum.as_ref().is_some_and(|o| (o.value - best).abs() <= TIE_TOLERANCE))
        .map(|r| r.id)
        .collect();
    Ok(SearchResult {
        task: task.clone(),
        rows,
        winner,
        joint_winners,
    })
}
