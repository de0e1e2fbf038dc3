//! Canonical codes of labeled PQ-trees. Equal codes mean the trees are
//! equivalent, which for interval graphs means the graphs are isomorphic.

use crate::{labeled, LabeledPqTree, NodeId, NodeKind, PqError};
use graph_core::{IntervalGraph, VertexId};
use std::collections::BTreeMap;
use std::fmt::Write;

const TAG_EMPTY: u64 = 0;
const TAG_LEAF: u64 = 1;
const TAG_P: u64 = 2;
const TAG_Q: u64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u64>);

/// Per-node codes plus the choices that produced them: the canonical child
/// order and whether a Q-node was read reversed.
pub(crate) struct Canon {
    code: Vec<Vec<u64>>,
    order: Vec<Vec<NodeId>>,
    reversed: Vec<bool>,
}

fn push_child(out: &mut Vec<u64>, code: &[u64]) {
    out.push(code.len() as u64);
    out.extend_from_slice(code);
}

fn q_variant(lt: &LabeledPqTree, q: NodeId, code: &[Vec<u64>], reversed: bool) -> Vec<u64> {
    let ch = lt.children(q);
    let m = ch.len();
    let mut out = vec![TAG_Q, m as u64];
    let ordered: Vec<NodeId> = if reversed { ch.iter().rev().copied().collect() } else { ch.to_vec() };
    for c in ordered {
        push_child(&mut out, &code[c]);
    }
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for &v in lt.members(q) {
        let (a, b) = lt.block(q, v);
        let key = if reversed { (m - b + 1, m - a + 1) } else { (a, b) };
        *counts.entry(key).or_default() += 1;
    }
    out.push(counts.len() as u64);
    for ((a, b), c) in counts {
        out.extend([a as u64, b as u64, c]);
    }
    out
}

pub(crate) fn canon(lt: &LabeledPqTree) -> Canon {
    let nodes = lt.node_count();
    let mut c = Canon { code: vec![Vec::new(); nodes], order: vec![Vec::new(); nodes], reversed: vec![false; nodes] };
    if let Some(r) = lt.root() {
        let mut post = Vec::with_capacity(nodes);
        let mut stack = vec![(r, false)];
        while let Some((x, done)) = stack.pop() {
            if done {
                post.push(x);
            } else {
                stack.push((x, true));
                for &ch in lt.children(x) {
                    stack.push((ch, false));
                }
            }
        }
        for x in post {
            let own = lt.members(x).len() as u64;
            match lt.kind(x) {
                NodeKind::Leaf(_) => c.code[x] = vec![TAG_LEAF, own],
                NodeKind::P => {
                    let mut ch = lt.children(x).to_vec();
                    ch.sort_by(|&a, &b| c.code[a].cmp(&c.code[b]));
                    let mut out = vec![TAG_P, own, ch.len() as u64];
                    for &y in &ch {
                        push_child(&mut out, &c.code[y]);
                    }
                    c.code[x] = out;
                    c.order[x] = ch;
                }
                NodeKind::Q => {
                    let fwd = q_variant(lt, x, &c.code, false);
                    let rev = q_variant(lt, x, &c.code, true);
                    let use_rev = rev < fwd;
                    c.reversed[x] = use_rev;
                    c.order[x] = if use_rev {
                        lt.children(x).iter().rev().copied().collect()
                    } else {
                        lt.children(x).to_vec()
                    };
                    c.code[x] = if use_rev { rev } else { fwd };
                }
            }
        }
    }
    c
}

pub fn canonical_code(lt: &LabeledPqTree) -> CanonicalCode {
    match lt.root() {
        None => CanonicalCode(vec![TAG_EMPTY]),
        Some(r) => {
            let mut c = canon(lt);
            CanonicalCode(std::mem::take(&mut c.code[r]))
        }
    }
}

pub fn graph_code(g: &IntervalGraph) -> Result<CanonicalCode, PqError> {
    Ok(canonical_code(&labeled(g)?))
}

pub fn are_isomorphic(g1: &IntervalGraph, g2: &IntervalGraph) -> Result<bool, PqError> {
    let (c1, c2) = (graph_code(g1)?, graph_code(g2)?);
    Ok(g1.n() == g2.n() && g1.edge_count() == g2.edge_count() && c1 == c2)
}

/// Isomorphism from `g1` onto `g2` as a vertex map, checked edge by edge
/// before it is returned.
pub fn extract_isomorphism(g1: &IntervalGraph, g2: &IntervalGraph) -> Result<Vec<VertexId>, PqError> {
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Err(PqError::NotIsomorphic);
    }
    let (t1, t2) = (labeled(g1)?, labeled(g2)?);
    let (c1, c2) = (canon(&t1), canon(&t2));
    let mut map = vec![usize::MAX; g1.n()];
    match (t1.root(), t2.root()) {
        (None, None) => return Ok(map),
        (Some(r1), Some(r2)) if c1.code[r1] == c2.code[r2] => {
            align(&t1, &c1, r1, &t2, &c2, r2, &mut map);
        }
        _ => return Err(PqError::NotIsomorphic),
    }
    if is_isomorphism(g1, g2, &map) {
        Ok(map)
    } else {
        Err(PqError::NotIsomorphic)
    }
}

fn align(t1: &LabeledPqTree, c1: &Canon, x1: NodeId, t2: &LabeledPqTree, c2: &Canon, x2: NodeId, map: &mut [VertexId]) {
    match t1.kind(x1) {
        NodeKind::Leaf(_) | NodeKind::P => {
            for (&u, &v) in t1.members(x1).iter().zip(t2.members(x2)) {
                map[u] = v;
            }
        }
        NodeKind::Q => {
            let m = t1.children(x1).len();
            let oriented = |t: &LabeledPqTree, c: &Canon, x: NodeId| {
                let mut by_block: BTreeMap<(usize, usize), Vec<VertexId>> = BTreeMap::new();
                for &v in t.members(x) {
                    let (a, b) = t.block(x, v);
                    let key = if c.reversed[x] { (m - b + 1, m - a + 1) } else { (a, b) };
                    by_block.entry(key).or_default().push(v);
                }
                by_block
            };
            let (b1, b2) = (oriented(t1, c1, x1), oriented(t2, c2, x2));
            for (key, us) in b1 {
                for (&u, &v) in us.iter().zip(&b2[&key]) {
                    map[u] = v;
                }
            }
        }
    }
    let pairs: Vec<(NodeId, NodeId)> = match t1.kind(x1) {
        NodeKind::Leaf(_) => Vec::new(),
        _ => c1.order[x1].iter().copied().zip(c2.order[x2].iter().copied()).collect(),
    };
    for (y1, y2) in pairs {
        align(t1, c1, y1, t2, c2, y2, map);
    }
}

/// Bijection check plus adjacency preservation in both directions.
pub(crate) fn is_isomorphism(g1: &IntervalGraph, g2: &IntervalGraph, map: &[VertexId]) -> bool {
    if g1.n() != g2.n() || map.len() != g1.n() {
        return false;
    }
    let mut seen = vec![false; g2.n()];
    for &v in map {
        if v >= g2.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    g1.edge_count() == g2.edge_count() && g1.edges().all(|(u, w)| g2.has_edge(map[u], map[w]))
}

impl LabeledPqTree {
    /// One node per line in canonical order, indented by depth.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        if let Some(r) = self.root() {
            let c = canon(self);
            self.dump_node(&c, r, 0, &mut out);
        }
        out
    }

    fn dump_node(&self, c: &Canon, x: NodeId, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        let own = self.members(x).len();
        match self.kind(x) {
            NodeKind::Leaf(i) => {
                let clique: Vec<String> = self.tree().cliques[i].iter().map(|v| v.to_string()).collect();
                writeln!(out, "{pad}L:{{{}}} own={own}", clique.join(",")).unwrap();
            }
            NodeKind::P => writeln!(out, "{pad}P own={own}").unwrap(),
            NodeKind::Q => {
                let m = self.children(x).len();
                let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
                for &v in self.members(x) {
                    let (a, b) = self.block(x, v);
                    let key = if c.reversed[x] { (m - b + 1, m - a + 1) } else { (a, b) };
                    *counts.entry(key).or_default() += 1;
                }
                let labels: Vec<String> = counts.iter().map(|((a, b), n)| format!("[{a},{b}]x{n}")).collect();
                writeln!(out, "{pad}Q {}", labels.join(" ")).unwrap();
            }
        }
        if !matches!(self.kind(x), NodeKind::Leaf(_)) {
            for &y in &c.order[x] {
                self.dump_node(c, y, depth + 1, out);
            }
        }
    }
}
