//! Interval graphs with optional interval models, maximal clique machinery and
//! the structural queries shared by the other crates.

mod cliques;
pub mod io;

pub use cliques::{maximal_cliques, maximal_cliques_ordered, CliqueOrdering};

use std::collections::VecDeque;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("malformed interval for vertex {vertex}: left {left} > right {right}")]
    MalformedInterval { vertex: VertexId, left: i64, right: i64 },
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("self loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex set is empty")]
    EmptySet,
    #[error("graph is not an interval graph")]
    NotInterval,
    #[error("graph carries no interval model")]
    MissingModel,
    #[error("interval model does not match the adjacency")]
    ModelMismatch,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Closed interval with integer endpoints. Touching intervals intersect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub left: i64,
    pub right: i64,
}

impl Interval {
    pub fn new(left: i64, right: i64) -> Self {
        Interval { left, right }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.left <= other.right && other.left <= self.right
    }

    pub fn mirrored(&self) -> Interval {
        Interval::new(-self.right, -self.left)
    }
}

/// Simple undirected graph on vertices `0..n`, optionally carrying an
/// interval model that represents it exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalGraph {
    adj: Vec<Vec<VertexId>>,
    model: Option<Vec<Interval>>,
}

impl IntervalGraph {
    pub fn empty(n: usize) -> Self {
        IntervalGraph { adj: vec![Vec::new(); n], model: None }
    }

    /// Duplicate edges are merged; self loops and out-of-range ids are errors.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::UnknownVertex(x));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(IntervalGraph { adj, model: None })
    }

    pub fn from_intervals(model: Vec<Interval>) -> Result<Self, GraphError> {
        for (v, iv) in model.iter().enumerate() {
            if iv.left > iv.right {
                return Err(GraphError::MalformedInterval { vertex: v, left: iv.left, right: iv.right });
            }
        }
        let n = model.len();
        let mut adj = vec![Vec::new(); n];
        for u in 0..n {
            for v in u + 1..n {
                if model[u].intersects(&model[v]) {
                    adj[u].push(v);
                    adj[v].push(u);
                }
            }
        }
        Ok(IntervalGraph { adj, model: Some(model) })
    }

    /// Attaches a model after checking that it represents the graph.
    pub fn with_model(mut self, model: Vec<Interval>) -> Result<Self, GraphError> {
        let other = IntervalGraph::from_intervals(model)?;
        if other.adj != self.adj {
            return Err(GraphError::ModelMismatch);
        }
        self.model = other.model;
        Ok(self)
    }

    pub fn without_model(mut self) -> Self {
        self.model = None;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn model(&self) -> Option<&[Interval]> {
        self.model.as_deref()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }

    /// Subgraph induced by `keep`. New vertex `i` is the `i`-th smallest id of
    /// `keep`; the model is restricted when present.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> Result<IntervalGraph, GraphError> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            self.check(v)?;
            index[v] = i;
        }
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&u| index[u] != usize::MAX)
                    .map(|&u| index[u])
                    .collect()
            })
            .collect();
        let model = self.model.as_ref().map(|m| keep.iter().map(|&v| m[v]).collect());
        Ok(IntervalGraph { adj, model })
    }

    /// Deletes `removed` and returns the remaining graph together with the
    /// old id of every new vertex.
    pub fn remove_vertices(&self, removed: &[VertexId]) -> (IntervalGraph, Vec<VertexId>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            if v < self.n() {
                gone[v] = true;
            }
        }
        let keep: Vec<VertexId> = (0..self.n()).filter(|&v| !gone[v]).collect();
        let sub = self.induced_subgraph(&keep).expect("ids come from the graph");
        (sub, keep)
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> IntervalGraph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            adj[perm[v]] = self.adj[v].iter().map(|&u| perm[u]).collect();
            adj[perm[v]].sort_unstable();
        }
        let model = self.model.as_ref().map(|m| {
            let mut out = vec![Interval::new(0, 0); n];
            for v in 0..n {
                out[perm[v]] = m[v];
            }
            out
        });
        IntervalGraph { adj, model }
    }

    /// Components as sorted vertex lists, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &u in &self.adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn universal_vertices(&self) -> Vec<VertexId> {
        let n = self.n();
        (0..n).filter(|&v| self.adj[v].len() + 1 == n).collect()
    }

    pub fn is_clique(&self, set: &[VertexId]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// Open neighborhood of a set: vertices outside `set` adjacent to a member.
    pub fn set_neighborhood(&self, set: &[VertexId]) -> Vec<VertexId> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut mark = vec![false; self.n()];
        for &v in set {
            for &u in &self.adj[v] {
                if !inside[u] {
                    mark[u] = true;
                }
            }
        }
        (0..self.n()).filter(|&u| mark[u]).collect()
    }
}

/// `m` is a module, induces a connected subgraph, and no outside neighbor has
/// its whole neighborhood inside `N[m]`.
pub fn is_complete_module(g: &IntervalGraph, m: &[VertexId]) -> Result<bool, GraphError> {
    if m.is_empty() {
        return Err(GraphError::EmptySet);
    }
    for &v in m {
        g.check(v)?;
    }
    let n = g.n();
    let mut inside = vec![false; n];
    for &v in m {
        inside[v] = true;
    }
    let outside_nbrs = g.set_neighborhood(m);
    for &x in &outside_nbrs {
        if !m.iter().all(|&v| g.has_edge(x, v)) {
            return Ok(false);
        }
    }
    let sub = g.induced_subgraph(m)?;
    if !sub.is_connected() {
        return Ok(false);
    }
    let mut closed = inside.clone();
    for &x in &outside_nbrs {
        closed[x] = true;
    }
    for &x in &outside_nbrs {
        if g.neighbors(x).iter().all(|&u| closed[u]) {
            return Ok(false);
        }
    }
    Ok(true)
}
