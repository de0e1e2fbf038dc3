//! Interval graph pairs `(H, G)` built from a Clique instance `(F, k)` such
//! that `H` is an induced subgraph of `G` exactly when `F` has a `k`-clique.
//! Every interval of either model has its mirror image in the same model.

use graph_core::{GraphError, Interval, IntervalGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReductionError {
    #[error("clique size must be positive")]
    ZeroK,
    #[error("clique size {k} exceeds the {n} vertices of F")]
    KTooLarge { k: usize, n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone)]
pub struct CliqueInstance {
    pub f: IntervalGraph,
    pub k: usize,
}

/// The pair together with a readable name for every vertex.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub h: IntervalGraph,
    pub g: IntervalGraph,
    pub h_names: Vec<String>,
    pub g_names: Vec<String>,
}

struct Builder {
    model: Vec<Interval>,
    names: Vec<String>,
}

impl Builder {
    fn add(&mut self, name: String, left: i64, right: i64) {
        self.model.push(Interval::new(left, right));
        self.names.push(name);
    }

    /// The four-interval gadgets of index `i` on both sides, then the long
    /// interval through zero.
    fn gadget(&mut self, i: usize) {
        let t = 10 * i as i64;
        for (x, lo, hi) in [("a", 8, 5), ("b", 6, 3), ("c", 4, 1), ("d", 2, 0)] {
            self.add(format!("{x}{i}+"), t - lo, t - hi);
            self.add(format!("{x}{i}-"), -t + hi, -t + lo);
        }
        self.add(format!("f{i},{i}"), -t + 5, t - 5);
    }

    fn cross(&mut self, i: usize, j: usize) {
        self.add(format!("f{i},{j}"), -10 * i as i64 + 7, 10 * j as i64 - 7);
    }

    fn finish(mut self, count: usize) -> Result<(IntervalGraph, Vec<String>), GraphError> {
        let reach = 10 * count as i64;
        self.add("g-".into(), -reach, -1);
        self.add("g+".into(), 1, reach);
        Ok((IntervalGraph::from_intervals(self.model)?, self.names))
    }
}

/// Vertex order in both graphs: per index `a+ a- b+ b- c+ c- d+ d- f_ii`,
/// then the cross intervals, then `g-` and `g+`. Cross intervals of `G`
/// follow the edges of `F` (pairs `u < w`), each as `f_uw` then `f_wu`; those
/// of `H` cover every ordered pair of distinct indices.
pub fn build_clique_reduction(ci: &CliqueInstance) -> Result<Reduction, ReductionError> {
    let (n, k) = (ci.f.n(), ci.k);
    if k == 0 {
        return Err(ReductionError::ZeroK);
    }
    if k > n {
        return Err(ReductionError::KTooLarge { k, n });
    }
    let mut gb = Builder { model: Vec::new(), names: Vec::new() };
    for i in 1..=n {
        gb.gadget(i);
    }
    for (u, w) in ci.f.edges() {
        gb.cross(u + 1, w + 1);
        gb.cross(w + 1, u + 1);
    }
    let (g, g_names) = gb.finish(n)?;

    let mut hb = Builder { model: Vec::new(), names: Vec::new() };
    for i in 1..=k {
        hb.gadget(i);
    }
    for i in 1..=k {
        for j in (i + 1)..=k {
            hb.cross(i, j);
            hb.cross(j, i);
        }
    }
    let (h, h_names) = hb.finish(k)?;
    Ok(Reduction { h, g, h_names, g_names })
}

/// Image of the intended embedding of `H` into `G` for a clique of `F`
/// listed in increasing order, or `None` when `clique` is not one.
pub fn clique_embedding(ci: &CliqueInstance, red: &Reduction, clique: &[VertexId]) -> Option<Vec<VertexId>> {
    if clique.len() != ci.k || clique.windows(2).any(|w| w[0] >= w[1]) {
        return None;
    }
    let pos = |names: &[String], name: &str| names.iter().position(|x| x == name);
    red.h_names
        .iter()
        .map(|name| {
            let target = rename(name, |i| clique.get(i - 1).map(|&v| v + 1))?;
            pos(&red.g_names, &target)
        })
        .collect()
}

fn rename(name: &str, map: impl Fn(usize) -> Option<usize>) -> Option<String> {
    if name.starts_with('g') {
        return Some(name.to_string());
    }
    if let Some(rest) = name.strip_prefix('f') {
        let (i, j) = rest.split_once(',')?;
        return Some(format!("f{},{}", map(i.parse().ok()?)?, map(j.parse().ok()?)?));
    }
    let (head, tail) = name.split_at(1);
    let sign = &tail[tail.len() - 1..];
    let i: usize = tail[..tail.len() - 1].parse().ok()?;
    Some(format!("{head}{}{sign}", map(i)?))
}
