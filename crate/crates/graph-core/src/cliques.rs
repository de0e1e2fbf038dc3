use crate::{GraphError, IntervalGraph, VertexId};

/// Maximal cliques in an order where the cliques through any vertex are
/// consecutive. Each clique is a sorted vertex list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueOrdering {
    pub cliques: Vec<Vec<VertexId>>,
}

impl CliqueOrdering {
    /// Checks that every vertex of `0..n` lies in a nonempty consecutive run.
    pub fn is_consecutive(&self, n: usize) -> bool {
        let mut first = vec![usize::MAX; n];
        let mut last = vec![0; n];
        let mut count = vec![0; n];
        for (i, c) in self.cliques.iter().enumerate() {
            for &v in c {
                first[v] = first[v].min(i);
                last[v] = i;
                count[v] += 1;
            }
        }
        (0..n).all(|v| count[v] > 0 && last[v] - first[v] + 1 == count[v])
    }

    /// For each vertex, the (first, last) clique index containing it.
    pub fn spans(&self, n: usize) -> Vec<(usize, usize)> {
        let mut span = vec![(usize::MAX, 0); n];
        for (i, c) in self.cliques.iter().enumerate() {
            for &v in c {
                span[v].0 = span[v].0.min(i);
                span[v].1 = i;
            }
        }
        span
    }
}

/// Left-to-right sweep over the model: a clique is emitted each time an
/// interval ends after at least one new interval opened.
pub fn maximal_cliques_ordered(g: &IntervalGraph) -> Result<CliqueOrdering, GraphError> {
    let model = g.model().ok_or(GraphError::MissingModel)?;
    let mut events: Vec<(i64, u8, VertexId)> = Vec::with_capacity(2 * model.len());
    for (v, iv) in model.iter().enumerate() {
        events.push((iv.left, 0, v));
        events.push((iv.right, 1, v));
    }
    events.sort_unstable();
    let mut active = vec![false; model.len()];
    let mut grew = false;
    let mut cliques = Vec::new();
    for (_, kind, v) in events {
        if kind == 0 {
            active[v] = true;
            grew = true;
        } else {
            if grew {
                cliques.push((0..model.len()).filter(|&u| active[u]).collect());
                grew = false;
            }
            active[v] = false;
        }
    }
    Ok(CliqueOrdering { cliques })
}

/// Maximal cliques of a chordal graph, found from a maximum cardinality search.
/// The order of the returned cliques carries no meaning. Graphs that are not
/// chordal cannot be interval graphs and yield `NotInterval`.
pub fn maximal_cliques(g: &IntervalGraph) -> Result<Vec<Vec<VertexId>>, GraphError> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = vec![false; n];
    let mut pos = vec![0usize; n];
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        pos[v] = step;
        for &u in g.neighbors(v) {
            if !visited[u] {
                weight[u] += 1;
            }
        }
    }
    // Reversed visit order is a perfect elimination ordering when g is chordal;
    // the later neighbours of v in that ordering are the ones visited earlier.
    let mut candidates: Vec<Vec<VertexId>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut c: Vec<VertexId> = g.neighbors(v).iter().copied().filter(|&u| pos[u] < pos[v]).collect();
        if !g.is_clique(&c) {
            return Err(GraphError::NotInterval);
        }
        c.push(v);
        c.sort_unstable();
        candidates.push(c);
    }
    candidates.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    for c in candidates {
        if !out.iter().any(|big| is_subset(&c, big)) {
            out.push(c);
        }
    }
    out.sort();
    Ok(out)
}

fn is_subset(small: &[VertexId], big: &[VertexId]) -> bool {
    small.iter().all(|v| big.binary_search(v).is_ok())
}
