//! PQ-trees over the maximal cliques of an interval graph, their labeling by
//! characteristic nodes and blocks, canonical codes, and isomorphism testing
//! with explicit mappings.

mod build;
mod canon;
mod label;

pub use canon::{are_isomorphic, canonical_code, extract_isomorphism, graph_code, CanonicalCode};
pub use label::{label_pqtree, LabeledPqTree};

use graph_core::{maximal_cliques, maximal_cliques_ordered, GraphError, IntervalGraph, VertexId};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PqError {
    #[error("graph is not an interval graph")]
    NotInterval,
    #[error("graphs are not isomorphic")]
    NotIsomorphic,
    #[error("node {0} is not a Q-node")]
    NotQNode(NodeId),
    #[error("node {0} is not a P-node")]
    NotPNode(NodeId),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    P,
    Q,
    /// Index into the tree's clique list.
    Leaf(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqNode {
    pub kind: NodeKind,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
}

/// Nodes live in an arena; `root` is `None` only for the graph without
/// vertices. Leaves refer to `cliques`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqTree {
    pub nodes: Vec<PqNode>,
    pub root: Option<NodeId>,
    pub cliques: Vec<Vec<VertexId>>,
}

impl PqTree {
    pub fn node(&self, x: NodeId) -> &PqNode {
        &self.nodes[x]
    }

    /// Leaves from left to right, as clique indices.
    pub fn frontier(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cliques.len());
        if let Some(r) = self.root {
            self.collect_frontier(r, &mut out);
        }
        out
    }

    fn collect_frontier(&self, x: NodeId, out: &mut Vec<usize>) {
        match self.nodes[x].kind {
            NodeKind::Leaf(c) => out.push(c),
            _ => {
                for &c in &self.nodes[x].children {
                    self.collect_frontier(c, out);
                }
            }
        }
    }

    /// P-nodes have at least two children and Q-nodes at least three.
    pub fn arity_ok(&self) -> bool {
        self.nodes.iter().all(|n| match n.kind {
            NodeKind::P => n.children.len() >= 2,
            NodeKind::Q => n.children.len() >= 3,
            NodeKind::Leaf(_) => n.children.is_empty(),
        })
    }
}

/// Builds the PQ-tree of `g` over its maximal cliques. Fails with
/// `NotInterval` when no consecutive clique ordering exists.
pub fn build_pqtree(g: &IntervalGraph) -> Result<PqTree, PqError> {
    let cliques = if g.model().is_some() {
        maximal_cliques_ordered(g)?.cliques
    } else {
        maximal_cliques(g).map_err(|_| PqError::NotInterval)?
    };
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, c) in cliques.iter().enumerate() {
        for &v in c {
            through[v].push(i);
        }
    }
    let mut tree = build::consecutive_tree(cliques.len(), &through).map_err(|_| PqError::NotInterval)?;
    tree.cliques = cliques;
    Ok(tree)
}

/// Convenience: build and label in one step.
pub fn labeled(g: &IntervalGraph) -> Result<LabeledPqTree, PqError> {
    let t = build_pqtree(g)?;
    Ok(label_pqtree(g, t))
}
