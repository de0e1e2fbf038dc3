use graph_core::{IntervalGraph, VertexId};
use pqtree::{graph_code, CanonicalCode, LabeledPqTree, NodeKind};
use std::collections::BTreeMap;

/// The children and root vertices of a Q-node root, read in one direction.
/// Children are numbered from 1; slot 0 of every per-child vector is unused.
#[derive(Debug, Clone)]
pub struct RootView {
    pub m: usize,
    pub children: Vec<Vec<VertexId>>,
    /// Code of the subgraph induced by each child, `None` when it is empty.
    pub codes: Vec<Option<CanonicalCode>>,
    /// Block of every root vertex, `None` for the others.
    pub block: Vec<Option<(usize, usize)>>,
    pub labels: BTreeMap<(usize, usize), Vec<VertexId>>,
    /// Root vertices starting at `i`, by right end then id.
    pub starts: Vec<Vec<VertexId>>,
    /// Root vertices ending at `i`, by left end then id.
    pub ends: Vec<Vec<VertexId>>,
    prefix: Vec<usize>,
    suffix: Vec<usize>,
}

impl RootView {
    /// `None` unless the root of `lt` is a Q-node.
    pub fn from_tree(g: &IntervalGraph, lt: &LabeledPqTree) -> Option<Self> {
        let r = lt.root()?;
        if lt.kind(r) != NodeKind::Q {
            return None;
        }
        let mut children = vec![Vec::new()];
        children.extend(lt.children(r).iter().map(|&c| lt.subtree_members(c)));
        let codes = children
            .iter()
            .map(|x| {
                if x.is_empty() {
                    None
                } else {
                    Some(graph_code(&g.induced_subgraph(x).expect("subtree ids")).expect("induced subgraphs are interval"))
                }
            })
            .collect();
        let blocks: Vec<(VertexId, (usize, usize))> = lt.members(r).iter().map(|&v| (v, lt.block(r, v))).collect();
        Some(Self::assemble(g.n(), children, codes, &blocks))
    }

    fn assemble(
        n: usize,
        children: Vec<Vec<VertexId>>,
        codes: Vec<Option<CanonicalCode>>,
        blocks: &[(VertexId, (usize, usize))],
    ) -> Self {
        let m = children.len() - 1;
        let mut block = vec![None; n];
        let mut labels: BTreeMap<(usize, usize), Vec<VertexId>> = BTreeMap::new();
        let mut starts = vec![Vec::new(); m + 1];
        let mut ends = vec![Vec::new(); m + 1];
        for &(v, (a, b)) in blocks {
            block[v] = Some((a, b));
            labels.entry((a, b)).or_default().push(v);
            starts[a].push(v);
            ends[b].push(v);
        }
        for list in labels.values_mut() {
            list.sort_unstable();
        }
        let key = |v: &VertexId| block[*v].expect("root vertex");
        for list in &mut starts {
            list.sort_unstable_by_key(|v| (key(v).1, *v));
        }
        for list in &mut ends {
            list.sort_unstable_by_key(|v| (key(v).0, *v));
        }
        let mut prefix = vec![0; m + 2];
        for i in 1..=m {
            prefix[i] = prefix[i - 1] + children[i].len() + ends[i].len();
        }
        let mut suffix = vec![0; m + 2];
        for i in (1..=m).rev() {
            suffix[i] = suffix[i + 1] + children[i].len() + starts[i].len();
        }
        RootView { m, children, codes, block, labels, starts, ends, prefix, suffix }
    }

    pub fn reversed(&self) -> Self {
        let m = self.m;
        let mut children = vec![Vec::new()];
        children.extend((1..=m).rev().map(|i| self.children[i].clone()));
        let mut codes = vec![None];
        codes.extend((1..=m).rev().map(|i| self.codes[i].clone()));
        let blocks: Vec<(VertexId, (usize, usize))> = self
            .labels
            .iter()
            .flat_map(|(&(a, b), vs)| vs.iter().map(move |&v| (v, (m + 1 - b, m + 1 - a))))
            .collect();
        Self::assemble(self.block.len(), children, codes, &blocks)
    }

    pub fn label(&self, a: usize, b: usize) -> &[VertexId] {
        self.labels.get(&(a, b)).map_or(&[], |v| v.as_slice())
    }

    pub fn label_count(&self, a: usize, b: usize) -> usize {
        self.label(a, b).len()
    }

    pub fn root_vertices(&self) -> impl Iterator<Item = (VertexId, (usize, usize))> + '_ {
        self.labels.iter().flat_map(|(&ab, vs)| vs.iter().map(move |&v| (v, ab)))
    }

    /// Number of vertices whose span lies inside `[1, i]`.
    pub fn w_prefix(&self, i: usize) -> usize {
        self.prefix[i]
    }

    /// Number of vertices whose span lies inside `[i, m]`.
    pub fn w_suffix(&self, i: usize) -> usize {
        self.suffix[i]
    }

    /// The child's own vertices followed by the root vertices starting there.
    pub fn start_side(&self, i: usize) -> impl Iterator<Item = VertexId> + '_ {
        self.children[i].iter().chain(&self.starts[i]).copied()
    }

    pub fn end_side(&self, i: usize) -> impl Iterator<Item = VertexId> + '_ {
        self.children[i].iter().chain(&self.ends[i]).copied()
    }

    pub fn label_counts(&self) -> BTreeMap<(usize, usize), usize> {
        self.labels.iter().map(|(&k, v)| (k, v.len())).collect()
    }
}
