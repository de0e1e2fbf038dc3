//! Complete modules of an interval graph, read off its labeled PQ-tree.
//! A complete module is either everything below some node (with a nonempty
//! own set when that node is a P-node) or a label class of a Q-node whose
//! block encloses no deeper vertex and no smaller label class.

use graph_core::{Interval, IntervalGraph, VertexId};
use pqtree::{graph_code, CanonicalCode, LabeledPqTree, NodeId, NodeKind};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("pattern graph is not a clique")]
    PatternNotClique,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Witness {
    SubtreeNode(NodeId),
    /// Label class of a Q-node over children `a..=b` (1-based).
    QBlock { q: NodeId, a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompleteModule {
    /// Sorted.
    pub vertices: Vec<VertexId>,
    pub witness: Witness,
    pub simple: bool,
    /// Smallest `h` for which the module is h-short.
    pub short_for: Option<usize>,
}

impl CompleteModule {
    pub fn is_short(&self, h: usize) -> bool {
        self.short_for.is_some_and(|s| s <= h)
    }
}

fn preorder(lt: &LabeledPqTree) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(lt.node_count());
    let mut stack: Vec<NodeId> = lt.root().into_iter().collect();
    while let Some(x) = stack.pop() {
        out.push(x);
        stack.extend(lt.children(x).iter().rev());
    }
    out
}

/// Every complete module, once each. Subtree modules come first in preorder,
/// then Q-blocks by (node, a, b); the whole list is then ordered by leftmost
/// coordinate in the graph's own model when it has one.
pub fn complete_modules(g: &IntervalGraph, lt: &LabeledPqTree) -> Vec<CompleteModule> {
    let order = preorder(lt);
    let mut out = Vec::new();
    let mut seen: BTreeSet<Vec<VertexId>> = BTreeSet::new();
    for &z in &order {
        if lt.kind(z) == NodeKind::P && lt.members(z).is_empty() {
            continue;
        }
        let vertices = lt.subtree_members(z);
        if vertices.is_empty() || !seen.insert(vertices.clone()) {
            continue;
        }
        let short_for = matches!(lt.kind(z), NodeKind::Leaf(_)).then_some(0);
        out.push(CompleteModule { vertices, witness: Witness::SubtreeNode(z), simple: false, short_for });
    }
    let mut qs: Vec<NodeId> = order.iter().copied().filter(|&x| lt.kind(x) == NodeKind::Q).collect();
    qs.sort_unstable();
    for q in qs {
        let labels = lt.labels(q).expect("Q-node");
        let hollow: Vec<bool> = lt.children(q).iter().map(|&c| lt.subtree_members(c).is_empty()).collect();
        for (&(a, b), members) in &labels {
            if !hollow[a - 1..b].iter().all(|&h| h) {
                continue;
            }
            let nested = labels.keys().any(|&(c, d)| (c, d) != (a, b) && a <= c && d <= b);
            if nested {
                continue;
            }
            let mut vertices = members.clone();
            vertices.sort_unstable();
            if !seen.insert(vertices.clone()) {
                continue;
            }
            out.push(CompleteModule { vertices, witness: Witness::QBlock { q, a, b }, simple: true, short_for: Some(b - a) });
        }
    }
    if let Some(model) = g.model() {
        sort_by_model(&mut out, model);
    }
    out
}

/// Stable sort by leftmost, then rightmost, coordinate under `model`.
pub fn sort_by_model(modules: &mut [CompleteModule], model: &[Interval]) {
    modules.sort_by_key(|m| span_of(&m.vertices, model));
}

pub fn span_of(vertices: &[VertexId], model: &[Interval]) -> (i64, i64) {
    let left = vertices.iter().map(|&v| model[v].left).min().unwrap_or(i64::MAX);
    let right = vertices.iter().map(|&v| model[v].right).max().unwrap_or(i64::MIN);
    (left, right)
}

pub fn h_short_complete_modules(g: &IntervalGraph, lt: &LabeledPqTree, h: usize) -> Vec<CompleteModule> {
    complete_modules(g, lt).into_iter().filter(|m| m.is_short(h)).collect()
}

fn matches_pattern(g: &IntervalGraph, m: &CompleteModule, n: usize, code: &CanonicalCode) -> bool {
    m.vertices.len() == n
        && g.induced_subgraph(&m.vertices).ok().and_then(|sub| graph_code(&sub).ok()).as_ref() == Some(code)
}

/// Complete modules inducing a copy of `pattern`. Empty when the pattern is
/// not an interval graph, since every induced subgraph of `g` is one.
pub fn occurrences_as_complete_module(pattern: &IntervalGraph, g: &IntervalGraph, lt: &LabeledPqTree) -> Vec<Vec<VertexId>> {
    let Ok(code) = graph_code(pattern) else { return Vec::new() };
    complete_modules(g, lt)
        .iter()
        .filter(|m| matches_pattern(g, m, pattern.n(), &code))
        .map(|m| m.vertices.clone())
        .collect()
}

/// Occurrences of a clique pattern as h-short complete modules.
pub fn occurrences_as_short_module(
    pattern: &IntervalGraph,
    g: &IntervalGraph,
    lt: &LabeledPqTree,
    h: usize,
) -> Result<Vec<Vec<VertexId>>, ModuleError> {
    let all: Vec<VertexId> = (0..pattern.n()).collect();
    if !pattern.is_clique(&all) {
        return Err(ModuleError::PatternNotClique);
    }
    let code = graph_code(pattern).expect("cliques are interval graphs");
    Ok(h_short_complete_modules(g, lt, h)
        .iter()
        .filter(|m| matches_pattern(g, m, pattern.n(), &code))
        .map(|m| m.vertices.clone())
        .collect())
}
