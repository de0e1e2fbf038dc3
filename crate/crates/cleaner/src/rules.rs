//! Reductions for everything except two Q-node roots. Each rule returns
//! `None` when its precondition does not hold.

use crate::{AOutcome, BranchResult, CleanError, CleaningInstance, SubInstance};
use graph_core::{Interval, IntervalGraph, VertexId};
use module_finder::{occurrences_as_complete_module, occurrences_as_short_module, span_of};
use pqtree::{graph_code, labeled, CanonicalCode, LabeledPqTree};
use std::collections::{BTreeMap, BTreeSet};

/// PQ-trees of both graphs and the fixed representation of `G`.
pub(crate) struct Prepared<'a> {
    pub inst: &'a CleaningInstance,
    pub lt_g: LabeledPqTree,
    pub lt_gp: LabeledPqTree,
    pub model: Vec<Interval>,
}

impl<'a> Prepared<'a> {
    pub fn new(inst: &'a CleaningInstance) -> Result<Self, CleanError> {
        let lt_g = labeled(&inst.g).map_err(|_| CleanError::NotInterval("G"))?;
        let lt_gp = labeled(&inst.gprime).map_err(|_| CleanError::NotInterval("G'"))?;
        let model = inst.g.model().map_or_else(|| lt_g.interval_model(), <[Interval]>::to_vec);
        Ok(Prepared { inst, lt_g, lt_gp, model })
    }
}

fn component_code(g: &IntervalGraph, comp: &[VertexId]) -> CanonicalCode {
    graph_code(&g.induced_subgraph(comp).expect("component ids")).expect("induced subgraphs are interval")
}

fn complement(n: usize, removed: &[VertexId]) -> Vec<VertexId> {
    let gone: BTreeSet<VertexId> = removed.iter().copied().collect();
    (0..n).filter(|v| !gone.contains(v)).collect()
}

fn without(inst: &CleaningInstance, gp_removed: &[VertexId], g_removed: &[VertexId]) -> SubInstance {
    let keep_gp = complement(inst.gprime.n(), gp_removed);
    let keep_g = complement(inst.g.n(), g_removed);
    SubInstance::induced(&inst.gprime, &keep_gp, &inst.g, &keep_g).expect("both sides lose the same number of vertices")
}

pub(crate) fn isomorphic_components(p: &Prepared) -> Option<AOutcome> {
    let inst = p.inst;
    let mut pattern: BTreeMap<CanonicalCode, Vec<VertexId>> = BTreeMap::new();
    for comp in inst.gprime.connected_components() {
        pattern.entry(component_code(&inst.gprime, &comp)).or_insert(comp);
    }
    inst.g.connected_components().into_iter().find_map(|comp| {
        let partner = pattern.get(&component_code(&inst.g, &comp))?;
        Some(AOutcome::ReducedInput(without(inst, partner, &comp)))
    })
}

fn subset_sums(counts: &[usize]) -> BTreeSet<usize> {
    let mut sums = BTreeSet::from([0]);
    for &c in counts {
        let shifted: Vec<usize> = sums.iter().map(|s| s + c).collect();
        sums.extend(shifted);
    }
    sums
}

pub(crate) fn many_components(p: &Prepared) -> Option<AOutcome> {
    let (inst, k) = (p.inst, p.inst.k);
    let mut comps = inst.gprime.connected_components();
    let wanted = 4 * k + 1;
    if comps.len() < wanted {
        return None;
    }
    comps.sort_by_key(|c| (std::cmp::Reverse(c.len()), c[0]));
    comps.truncate(wanted);
    let parts: Vec<(IntervalGraph, LabeledPqTree)> = comps
        .iter()
        .map(|c| {
            let sub = inst.gprime.induced_subgraph(c).expect("component ids");
            let lt = labeled(&sub).expect("induced subgraphs are interval");
            (sub, lt)
        })
        .collect();
    let h = k.div_ceil(2);
    let mut chosen: BTreeSet<VertexId> = BTreeSet::new();
    let mut branches = Vec::new();
    for (i, (pattern, _)) in parts.iter().enumerate() {
        let clique = pattern.is_clique(&(0..pattern.n()).collect::<Vec<_>>());
        let find = |g: &IntervalGraph, lt: &LabeledPqTree| {
            if clique {
                occurrences_as_short_module(pattern, g, lt, h).expect("pattern is a clique")
            } else {
                occurrences_as_complete_module(pattern, g, lt)
            }
        };
        let mut occ = find(&inst.g, &p.lt_g);
        occ.sort_by_key(|o| (span_of(o, &p.model), o.clone()));
        let counts: Vec<usize> = parts[..i].iter().map(|(sub, lt)| find(sub, lt).len()).collect();
        let (below, above) = if clique {
            let odd = k % 2;
            (k * (3 * h + 5) + odd, k * (4 * h + 3) + odd)
        } else {
            (4 * k, 4 * k)
        };
        let mut positions = BTreeSet::new();
        for s in subset_sums(&counts) {
            positions.extend(s.saturating_sub(below)..=(s + above).min(occ.len().saturating_sub(1)));
        }
        for idx in positions {
            let Some(module) = occ.get(idx) else { continue };
            if let Some(&v) = inst.g.set_neighborhood(module).iter().min() {
                if chosen.insert(v) {
                    branches.push(BranchResult::NecessarySet(vec![v]));
                }
            }
        }
    }
    Some(if branches.is_empty() { AOutcome::Reject } else { AOutcome::Branches(branches) })
}

pub(crate) fn disconnected_g(p: &Prepared) -> Option<AOutcome> {
    let (inst, k) = (p.inst, p.inst.k);
    let comps = inst.g.connected_components();
    if comps.len() < 2 {
        return None;
    }
    if comps.len() > k {
        return Some(AOutcome::Reject);
    }
    let host = &comps[0];
    let parts: Vec<(Vec<VertexId>, CanonicalCode)> = inst
        .gprime
        .connected_components()
        .into_iter()
        .map(|c| {
            let code = component_code(&inst.gprime, &c);
            (c, code)
        })
        .collect();
    let mut seen: BTreeSet<Vec<CanonicalCode>> = BTreeSet::new();
    let mut branches = Vec::new();
    for mask in 0u64..(1u64 << parts.len()) {
        let picked: Vec<usize> = (0..parts.len()).filter(|&i| mask >> i & 1 == 1).collect();
        let size: usize = picked.iter().map(|&i| parts[i].0.len()).sum();
        if size >= host.len() || host.len() - size >= k {
            continue;
        }
        let mut codes: Vec<CanonicalCode> = picked.iter().map(|&i| parts[i].1.clone()).collect();
        codes.sort();
        if !seen.insert(codes) {
            continue;
        }
        let keep: Vec<VertexId> = picked.iter().flat_map(|&i| parts[i].0.iter().copied()).collect();
        let sub = SubInstance::induced(&inst.gprime, &keep, &inst.g, host).expect("checked sizes");
        branches.push(BranchResult::IndependentSubproblem(sub));
    }
    Some(if branches.is_empty() { AOutcome::Reject } else { AOutcome::Branches(branches) })
}

pub(crate) fn universal_g(p: &Prepared) -> Option<AOutcome> {
    let inst = p.inst;
    let &x = inst.g.universal_vertices().first()?;
    Some(match inst.gprime.universal_vertices().first() {
        Some(&xp) => AOutcome::ReducedInput(without(inst, &[xp], &[x])),
        None => AOutcome::Branches(vec![BranchResult::NecessarySet(vec![x])]),
    })
}

pub(crate) fn disconnected_gprime(p: &Prepared) -> Option<AOutcome> {
    let (inst, k) = (p.inst, p.inst.k);
    let comps = inst.gprime.connected_components();
    if comps.len() < 2 {
        return None;
    }
    let n = inst.g.n();
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (p.model[v].right, v));
    let sizes: BTreeSet<usize> = comps.iter().flat_map(|c| c.len()..=c.len() + k).filter(|&s| s < n).collect();
    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let mut branches = Vec::new();
    for s in sizes {
        let prefix: BTreeSet<VertexId> = order[..s].iter().copied().collect();
        let crossing = order[..s]
            .iter()
            .find_map(|&x| inst.g.neighbors(x).iter().find(|y| !prefix.contains(y)).map(|&y| (x.min(y), x.max(y))));
        if let Some(e) = crossing {
            if edges.insert(e) {
                branches.push(BranchResult::NecessarySet(vec![e.0, e.1]));
            }
        }
    }
    Some(if branches.is_empty() { AOutcome::Reject } else { AOutcome::Branches(branches) })
}

pub(crate) fn universal_gprime(p: &Prepared) -> Option<AOutcome> {
    let inst = p.inst;
    inst.gprime.universal_vertices().first()?;
    let n = inst.g.n();
    let a = (0..n).min_by_key(|&v| (p.model[v].right, v))?;
    let b = (0..n).min_by_key(|&v| (std::cmp::Reverse(p.model[v].left), v))?;
    let set: BTreeSet<VertexId> = [a, b].into();
    Some(AOutcome::Branches(vec![BranchResult::NecessarySet(set.into_iter().collect())]))
}

fn run(inst: &CleaningInstance, rule: fn(&Prepared) -> Option<AOutcome>) -> Result<Option<AOutcome>, CleanError> {
    if inst.gprime.n() == 0 {
        return Ok(None);
    }
    Ok(rule(&Prepared::new(inst)?))
}

/// Removes a pair of isomorphic components, one from each graph.
pub fn rule_isomorphic_components(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    run(inst, isomorphic_components)
}

/// Locates the image of one of the `4k+1` largest components of `G'` when
/// `G'` has that many, and branches on a vertex of its neighbourhood.
pub fn rule_many_components(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    run(inst, many_components)
}

pub fn rule_disconnected_g(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    run(inst, disconnected_g)
}

pub fn rule_universal_g(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    run(inst, universal_g)
}

pub fn rule_disconnected_gprime(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    run(inst, disconnected_gprime)
}

pub fn rule_universal_gprime(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    run(inst, universal_gprime)
}
