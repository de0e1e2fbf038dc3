use crate::{NodeId, NodeKind, PqError, PqNode, PqTree};
use graph_core::{Interval, IntervalGraph, VertexId};
use std::collections::BTreeMap;

/// A PQ-tree together with the characteristic node of every vertex and the
/// derived block data at Q-nodes. Child positions in blocks are 1-based.
#[derive(Debug, Clone)]
pub struct LabeledPqTree {
    tree: PqTree,
    n: usize,
    frontier: Vec<usize>,
    leaf_at: Vec<NodeId>,
    range: Vec<(usize, usize)>,
    span: Vec<(usize, usize)>,
    charnode: Vec<NodeId>,
    members: Vec<Vec<VertexId>>,
}

/// Labels `t`, which must represent `g`.
pub fn label_pqtree(g: &IntervalGraph, t: PqTree) -> LabeledPqTree {
    label_with(g.n(), t)
}

pub(crate) fn label_with(n: usize, tree: PqTree) -> LabeledPqTree {
    let frontier = tree.frontier();
    let mut pos_of_clique = vec![0; tree.cliques.len()];
    for (p, &c) in frontier.iter().enumerate() {
        pos_of_clique[c] = p;
    }
    let mut range = vec![(usize::MAX, 0); tree.nodes.len()];
    let mut leaf_at = vec![0; frontier.len()];
    if let Some(r) = tree.root {
        fill_ranges(&tree, r, &pos_of_clique, &mut range, &mut leaf_at);
    }
    let mut span = vec![(usize::MAX, 0); n];
    for (c, clique) in tree.cliques.iter().enumerate() {
        let p = pos_of_clique[c];
        for &v in clique {
            span[v].0 = span[v].0.min(p);
            span[v].1 = span[v].1.max(p);
        }
    }
    let mut charnode = vec![0; n];
    let mut members = vec![Vec::new(); tree.nodes.len()];
    for v in 0..n {
        let (lo, hi) = span[v];
        let mut x = leaf_at[lo];
        while range[x].1 < hi {
            x = tree.nodes[x].parent.expect("root covers every position");
        }
        charnode[v] = x;
        members[x].push(v);
    }
    LabeledPqTree { tree, n, frontier, leaf_at, range, span, charnode, members }
}

fn fill_ranges(t: &PqTree, x: NodeId, pos: &[usize], range: &mut [(usize, usize)], leaf_at: &mut [NodeId]) {
    match t.nodes[x].kind {
        NodeKind::Leaf(c) => {
            range[x] = (pos[c], pos[c]);
            leaf_at[pos[c]] = x;
        }
        _ => {
            let ch = &t.nodes[x].children;
            for &c in ch {
                fill_ranges(t, c, pos, range, leaf_at);
            }
            range[x] = (range[ch[0]].0, range[*ch.last().unwrap()].1);
        }
    }
}

impl LabeledPqTree {
    pub fn tree(&self) -> &PqTree {
        &self.tree
    }

    pub fn root(&self) -> Option<NodeId> {
        self.tree.root
    }

    pub fn node(&self, x: NodeId) -> &PqNode {
        &self.tree.nodes[x]
    }

    pub fn kind(&self, x: NodeId) -> NodeKind {
        self.tree.nodes[x].kind
    }

    pub fn children(&self, x: NodeId) -> &[NodeId] {
        &self.tree.nodes[x].children
    }

    pub fn node_count(&self) -> usize {
        self.tree.nodes.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Cliques in frontier order.
    pub fn frontier_cliques(&self) -> Vec<&[VertexId]> {
        self.frontier.iter().map(|&c| self.tree.cliques[c].as_slice()).collect()
    }

    /// Frontier positions `[lo, hi]` covered by the subtree of `x`.
    pub fn frontier_range(&self, x: NodeId) -> (usize, usize) {
        self.range[x]
    }

    pub fn leaf_at(&self, position: usize) -> NodeId {
        self.leaf_at[position]
    }

    /// First and last frontier position of a clique containing `v`.
    pub fn span(&self, v: VertexId) -> (usize, usize) {
        self.span[v]
    }

    /// Deepest node whose frontier contains every clique through `v`.
    pub fn charnode(&self, v: VertexId) -> NodeId {
        self.charnode[v]
    }

    /// Vertices whose characteristic node is `x`, sorted.
    pub fn members(&self, x: NodeId) -> &[VertexId] {
        &self.members[x]
    }

    /// Vertices whose characteristic node lies in the subtree of `x`, sorted.
    pub fn subtree_members(&self, x: NodeId) -> Vec<VertexId> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            out.extend_from_slice(&self.members[y]);
            stack.extend_from_slice(&self.tree.nodes[y].children);
        }
        out.sort_unstable();
        out
    }

    fn child_covering(&self, q: NodeId, position: usize) -> usize {
        let ch = &self.tree.nodes[q].children;
        ch.partition_point(|&c| self.range[c].1 < position)
    }

    /// Block `[a, b]` of children of Q-node `q` spanned by `v`, which must
    /// have its characteristic node inside the subtree of `q`.
    pub fn block(&self, q: NodeId, v: VertexId) -> (usize, usize) {
        let (lo, hi) = self.span[v];
        (self.child_covering(q, lo) + 1, self.child_covering(q, hi) + 1)
    }

    /// Root vertices of Q-node `q` grouped by block; blocks with `a < b` only.
    pub fn labels(&self, q: NodeId) -> Result<BTreeMap<(usize, usize), Vec<VertexId>>, PqError> {
        if self.kind(q) != NodeKind::Q {
            return Err(PqError::NotQNode(q));
        }
        let mut out: BTreeMap<(usize, usize), Vec<VertexId>> = BTreeMap::new();
        for &v in &self.members[q] {
            out.entry(self.block(q, v)).or_default().push(v);
        }
        Ok(out)
    }

    /// Model read off the frontier: vertex `v` occupies the positions of its
    /// cliques.
    pub fn interval_model(&self) -> Vec<Interval> {
        self.span.iter().map(|&(lo, hi)| Interval::new(lo as i64, hi as i64)).collect()
    }

    /// Reverses the children of Q-node `q`; blocks follow by relabeling.
    pub fn reverse_q_children(&self, q: NodeId) -> Result<LabeledPqTree, PqError> {
        if self.kind(q) != NodeKind::Q {
            return Err(PqError::NotQNode(q));
        }
        let mut tree = self.tree.clone();
        tree.nodes[q].children.reverse();
        Ok(label_with(self.n, tree))
    }

    /// Reorders the children of P-node `p`: new child `i` is old child `perm[i]`.
    pub fn permute_p_children(&self, p: NodeId, perm: &[usize]) -> Result<LabeledPqTree, PqError> {
        if self.kind(p) != NodeKind::P {
            return Err(PqError::NotPNode(p));
        }
        let mut tree = self.tree.clone();
        let old = tree.nodes[p].children.clone();
        assert_eq!(perm.len(), old.len());
        tree.nodes[p].children = perm.iter().map(|&i| old[i]).collect();
        Ok(label_with(self.n, tree))
    }
}
