//! Text formats. A graph file starts with `n m` followed by `m` lines `u v`;
//! a model file has one `id left right` line per vertex. Blank lines and lines
//! starting with `#` are ignored.

use crate::{GraphError, Interval, IntervalGraph, VertexId};
use std::fmt::Write;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str, want: usize) -> Result<Vec<T>, GraphError> {
    let parts: Vec<&str> = text.split_whitespace().collect();
    if parts.len() != want {
        return Err(GraphError::Parse { line, msg: format!("expected {want} fields, found {}", parts.len()) });
    }
    parts
        .iter()
        .map(|p| p.parse::<T>().map_err(|_| GraphError::Parse { line, msg: format!("bad number {p:?}") }))
        .collect()
}

pub fn parse_graph(text: &str) -> Result<IntervalGraph, GraphError> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
    let head: Vec<usize> = numbers(line, header, 2)?;
    let (n, m) = (head[0], head[1]);
    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines.by_ref().take(m) {
        let e: Vec<VertexId> = numbers(line, l, 2)?;
        edges.push((e[0], e[1]));
    }
    if edges.len() != m {
        return Err(GraphError::Parse { line: 0, msg: format!("expected {m} edges, found {}", edges.len()) });
    }
    if let Some((line, _)) = lines.next() {
        return Err(GraphError::Parse { line, msg: "trailing content".into() });
    }
    IntervalGraph::from_edges(n, &edges)
}

pub fn write_graph(g: &IntervalGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

/// Ids must cover `0..n` exactly once, in any order.
pub fn parse_model(text: &str) -> Result<Vec<Interval>, GraphError> {
    let mut rows = Vec::new();
    for (line, l) in content_lines(text) {
        let f: Vec<i64> = numbers(line, l, 3)?;
        if f[0] < 0 {
            return Err(GraphError::Parse { line, msg: "negative vertex id".into() });
        }
        rows.push((line, f[0] as usize, f[1], f[2]));
    }
    let n = rows.len();
    let mut model = vec![None; n];
    for (line, id, left, right) in rows {
        if id >= n {
            return Err(GraphError::UnknownVertex(id));
        }
        if model[id].is_some() {
            return Err(GraphError::Parse { line, msg: format!("vertex {id} listed twice") });
        }
        if left > right {
            return Err(GraphError::MalformedInterval { vertex: id, left, right });
        }
        model[id] = Some(Interval::new(left, right));
    }
    Ok(model.into_iter().map(|iv| iv.expect("every id seen once")).collect())
}

pub fn write_model(model: &[Interval]) -> String {
    let mut out = String::new();
    for (v, iv) in model.iter().enumerate() {
        writeln!(out, "{v} {} {}", iv.left, iv.right).unwrap();
    }
    out
}
