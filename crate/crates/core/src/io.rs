//! Line-oriented graph text format.
//!
//! ```text
//! # comment
//! n 3
//! v 0 0.8        (optional, missing vertices get ν = 1)
//! e 0 1 0.5
//! e 1 2 0.25
//! ```
//!
//! The first directive must be `n`. Parsing is strict: unknown directives,
//! duplicate vertices or edges, out-of-range ids, self-loops, memberships
//! outside their range and fuzzy-axiom violations are errors carrying the
//! offending line number.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{Edge, FuzzyGraph};

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| err(line, format!("malformed {what} '{tok}'")))
}

pub fn parse_graph_str(text: &str) -> Result<FuzzyGraph> {
    let mut n: Option<usize> = None;
    let mut nu: Vec<f64> = Vec::new();
    let mut seen_vertex = HashSet::new();
    let mut seen_edge = HashSet::new();
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let directive = toks.next().unwrap();
        match (directive, n) {
            ("n", None) => {
                let count: usize = field(toks.next(), line, "vertex count")?;
                n = Some(count);
                nu = vec![1.0; count];
            }
            ("n", Some(_)) => return Err(err(line, "vertex count given twice")),
            (_, None) => return Err(err(line, "first directive must be 'n <vertex-count>'")),
            ("v", Some(count)) => {
                let id: usize = field(toks.next(), line, "vertex id")?;
                let value: f64 = field(toks.next(), line, "vertex membership")?;
                if id >= count {
                    return Err(err(line, format!("vertex id {id} out of range for n = {count}")));
                }
                if !(0.0..=1.0).contains(&value) {
                    return Err(err(line, format!("vertex membership {value} out of [0,1]")));
                }
                if !seen_vertex.insert(id) {
                    return Err(err(line, format!("duplicate vertex {id}")));
                }
                nu[id] = value;
            }
            ("e", Some(count)) => {
                let u: usize = field(toks.next(), line, "edge endpoint")?;
                let v: usize = field(toks.next(), line, "edge endpoint")?;
                let mu: f64 = field(toks.next(), line, "edge membership")?;
                if u == v {
                    return Err(err(line, format!("self-loop at line {line}")));
                }
                if u >= count || v >= count {
                    return Err(err(line, format!("edge ({u},{v}) out of range for n = {count}")));
                }
                if !(mu > 0.0 && mu <= 1.0) {
                    return Err(err(line, format!("membership out of (0,1]: {mu}")));
                }
                if !seen_edge.insert((u.min(v), u.max(v))) {
                    return Err(err(line, format!("duplicate edge ({u},{v})")));
                }
                edges.push(Edge::new(u, v, mu));
                edge_lines.push(line);
            }
            (other, Some(_)) => return Err(err(line, format!("unknown directive '{other}'"))),
        }
        if let Some(extra) = toks.next() {
            return Err(err(line, format!("unexpected trailing token '{extra}'")));
        }
    }
    if n.is_none() {
        return Err(err(0, "missing 'n <vertex-count>' line"));
    }
    // Vertex lines may follow edge lines, so the axiom is checked at the end.
    for (e, &line) in edges.iter().zip(&edge_lines) {
        let cap = nu[e.u].min(nu[e.v]);
        if e.mu > cap {
            return Err(err(line, format!("edge ({},{}): μ > min(ν), {} > {}", e.u, e.v, e.mu, cap)));
        }
    }
    FuzzyGraph::new(nu, edges)
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<FuzzyGraph> {
    let text = std::fs::read_to_string(path.as_ref())?;
    parse_graph_str(&text)
}

/// Serialises `g`; floats use shortest round-trip formatting, so parsing
/// the output reproduces `g` exactly.
pub fn write_graph(g: &FuzzyGraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n {}", g.order());
    for (i, nu) in g.nu().iter().enumerate() {
        let _ = writeln!(s, "v {i} {nu}");
    }
    for e in g.edges() {
        let _ = writeln!(s, "e {} {} {}", e.u, e.v, e.mu);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_fuzzy_graph;

    fn line_of(e: Error) -> usize {
        match e {
            Error::Parse { line, .. } => line,
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_with_comments_and_defaults() {
        let g = parse_graph_str("# triangle-ish\nn 3\nv 2 0.5 # weak vertex\n\ne 0 1 0.9\ne 2 1 0.5\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.nu(), &[1.0, 1.0, 0.5]);
        assert_eq!(g.pairs(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn round_trip_is_identical() {
        for seed in 0..10 {
            let g = random_fuzzy_graph(7, 0.5, seed);
            let text = write_graph(&g);
            let h = parse_graph_str(&text).unwrap();
            assert_eq!(g, h);
            assert_eq!(write_graph(&h), text);
        }
    }

    #[test]
    fn strict_errors_carry_line_numbers() {
        let e = parse_graph_str("n 2\ne 0 0 0.5\n").unwrap_err();
        assert!(e.to_string().contains("self-loop at line 2"));
        let e = parse_graph_str("n 2\n\ne 0 1 1.5\n").unwrap_err();
        assert!(e.to_string().contains("membership out of (0,1]"));
        assert_eq!(line_of(e), 3);
        assert_eq!(line_of(parse_graph_str("n 2\ne 0 1 0.5\ne 1 0 0.2\n").unwrap_err()), 3);
        assert_eq!(line_of(parse_graph_str("n 2\nx 0 1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph_str("n 2\ne 0 5 0.1\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph_str("e 0 1 0.1\n").unwrap_err()), 1);
        assert_eq!(line_of(parse_graph_str("n 2\ne 0 1 abc\n").unwrap_err()), 2);
        assert_eq!(line_of(parse_graph_str("n 2\ne 0 1 0.6\nv 0 0.3\n").unwrap_err()), 2);
        assert!(parse_graph_str("# nothing\n").is_err());
    }
}
