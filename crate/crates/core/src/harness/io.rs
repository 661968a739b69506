//! Plain-text graph files.
//!
//! ```text
//! n m weighted|unweighted p_v p_e
//! u v [w]
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Weights are required
//! for weighted graphs and forbidden for unweighted ones.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::StochasticGraph;

pub fn parse_graph_file(path: impl AsRef<Path>) -> Result<StochasticGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_graph(&text, path)
}

/// Parses graph text; `origin` only labels error messages.
pub fn parse_graph(text: &str, origin: impl AsRef<Path>) -> Result<StochasticGraph> {
    let origin = origin.as_ref();
    let err = |line: usize, message: String| Error::Parse {
        path: PathBuf::from(origin),
        line,
        message,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or_else(|| err(1, "missing header".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m, kind, p_v, p_e] = fields[..] else {
        return Err(err(hline, format!("header needs 5 fields `n m weighted|unweighted p_v p_e`, found {}", fields.len())));
    };
    let n: usize = n.parse().map_err(|_| err(hline, format!("bad vertex count `{n}`")))?;
    let m: usize = m.parse().map_err(|_| err(hline, format!("bad edge count `{m}`")))?;
    let weighted = match kind {
        "weighted" => true,
        "unweighted" => false,
        other => return Err(err(hline, format!("expected `weighted` or `unweighted`, found `{other}`"))),
    };
    let prob = |s: &str, name: &str| -> Result<f64> {
        let p: f64 = s.parse().map_err(|_| err(hline, format!("bad {name} `{s}`")))?;
        if p > 0.0 && p <= 1.0 {
            Ok(p)
        } else {
            Err(err(hline, format!("{name} must lie in (0, 1], got {p}")))
        }
    };
    let (p_v, p_e) = (prob(p_v, "p_v")?, prob(p_e, "p_e")?);

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for (line, text) in lines {
        if edges.len() == m {
            return Err(err(line, format!("more than the {m} edges declared in the header")));
        }
        let f: Vec<&str> = text.split_whitespace().collect();
        let want = if weighted { 3 } else { 2 };
        if f.len() != want {
            let what = if weighted { "`u v w`" } else { "`u v` (no weight in an unweighted graph)" };
            return Err(err(line, format!("expected {what}, found {} fields", f.len())));
        }
        let vertex = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| err(line, format!("bad vertex `{s}`")))?;
            if v >= n {
                return Err(err(line, format!("vertex {v} out of range for n = {n}")));
            }
            Ok(v)
        };
        let (a, b) = (vertex(f[0])?, vertex(f[1])?);
        if a == b {
            return Err(err(line, format!("self-loop at vertex {a}")));
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(err(line, format!("duplicate edge ({}, {})", a.min(b), a.max(b))));
        }
        let w = if weighted {
            let w: f64 = f[2].parse().map_err(|_| err(line, format!("bad weight `{}`", f[2])))?;
            if !(w.is_finite() && w >= 0.0) {
                return Err(err(line, format!("weight must be finite and non-negative, got {w}")));
            }
            w
        } else {
            1.0
        };
        edges.push((a, b, w));
    }
    if edges.len() != m {
        return Err(err(text.lines().count().max(1), format!("header declares {m} edges, found {}", edges.len())));
    }
    if weighted {
        StochasticGraph::new(n, edges, p_v, p_e)
    } else {
        StochasticGraph::unweighted(n, edges.into_iter().map(|(a, b, _)| (a, b)), p_v, p_e)
    }
}

/// Renders `g` in canonical edge order. Floats use the shortest
/// representation that parses back to the same value.
pub fn format_graph(g: &StochasticGraph) -> String {
    let mut out = String::new();
    let kind = if g.is_weighted() { "weighted" } else { "unweighted" };
    let _ = writeln!(out, "{} {} {kind} {} {}", g.n(), g.m(), g.p_v(), g.p_e());
    for e in g.edges() {
        let (u, v) = e.endpoints();
        if g.is_weighted() {
            let _ = writeln!(out, "{u} {v} {}", e.weight);
        } else {
            let _ = writeln!(out, "{u} {v}");
        }
    }
    out
}

pub fn write_graph_file(g: &StochasticGraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_graph(g))?;
    Ok(())
}
