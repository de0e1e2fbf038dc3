//! Deciding whether `k` vertices can be deleted from an interval graph `G`
//! so that what remains is isomorphic to a given interval graph `G'`.
//!
//! [`interval_cleaning`] searches over necessary sets: every solvable
//! instance has a solution meeting the set returned by [`necessary_set`],
//! whose size depends on `k` only. [`algorithm_a`] is the single step that
//! either shrinks the instance or branches into a bounded number of
//! necessary sets and smaller independent instances.

mod driver;
mod fragment;
mod properties;
mod qq;
mod root;
mod rules;
mod search;
mod trace;

use graph_core::{IntervalGraph, VertexId};
use pqtree::PqError;
use serde::Serialize;

pub use driver::{algorithm_a, interval_cleaning, necessary_set};
pub use fragment::{AnnotatedFragmentation, Fragment};
pub use qq::{qq_case, qq_check_reduced, QqView};
pub use root::RootView;
pub use rules::{
    rule_disconnected_g, rule_disconnected_gprime, rule_isomorphic_components, rule_many_components,
    rule_universal_g, rule_universal_gprime,
};
pub use search::BlockGuess;
pub use trace::{TraceEvent, Tracer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CleanError {
    #[error("{0} is not an interval graph")]
    NotInterval(&'static str),
    #[error("G' has {gprime} vertices but G only {g}")]
    PatternTooLarge { gprime: usize, g: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// The pair `(G', G)` with parameter `k = |V(G)| - |V(G')|`.
#[derive(Debug, Clone)]
pub struct CleaningInstance {
    pub gprime: IntervalGraph,
    pub g: IntervalGraph,
    pub k: usize,
}

impl CleaningInstance {
    pub fn new(gprime: IntervalGraph, g: IntervalGraph) -> Result<Self, CleanError> {
        check_interval(&gprime, "G'")?;
        check_interval(&g, "G")?;
        if gprime.n() > g.n() {
            return Err(CleanError::PatternTooLarge { gprime: gprime.n(), g: g.n() });
        }
        Ok(Self::unchecked(gprime, g))
    }

    /// For induced subgraphs of instances that were already checked.
    pub(crate) fn unchecked(gprime: IntervalGraph, g: IntervalGraph) -> Self {
        let k = g.n() - gprime.n();
        CleaningInstance { gprime, g, k }
    }
}

fn check_interval(g: &IntervalGraph, name: &'static str) -> Result<(), CleanError> {
    match pqtree::build_pqtree(g) {
        Ok(_) => Ok(()),
        Err(PqError::NotInterval) => Err(CleanError::NotInterval(name)),
        Err(e) => Err(CleanError::Internal(e.to_string())),
    }
}

/// Vertices of `G` whose deletion leaves a copy of `G'`. Sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Solution {
    pub deleted: Vec<VertexId>,
}

/// A smaller instance on induced subgraphs, with `vertex_map[v]` the id in
/// the parent `G` of vertex `v` of the new `G`.
#[derive(Debug, Clone)]
pub struct SubInstance {
    pub instance: CleaningInstance,
    pub vertex_map: Vec<VertexId>,
}

impl SubInstance {
    /// `None` when the new `G'` is larger than the new `G`.
    pub(crate) fn induced(
        gprime: &IntervalGraph,
        keep_gprime: &[VertexId],
        g: &IntervalGraph,
        keep_g: &[VertexId],
    ) -> Option<Self> {
        if keep_gprime.len() > keep_g.len() {
            return None;
        }
        let gp = gprime.induced_subgraph(keep_gprime).expect("ids come from the graph");
        let gs = g.induced_subgraph(keep_g).expect("ids come from the graph");
        let mut vertex_map = keep_g.to_vec();
        vertex_map.sort_unstable();
        vertex_map.dedup();
        Some(SubInstance { instance: CleaningInstance::unchecked(gp, gs), vertex_map })
    }

    pub(crate) fn lift(&self, vertices: &[VertexId]) -> Vec<VertexId> {
        vertices.iter().map(|&v| self.vertex_map[v]).collect()
    }
}

#[derive(Debug, Clone)]
pub enum BranchResult {
    NecessarySet(Vec<VertexId>),
    IndependentSubproblem(SubInstance),
    Solution(Solution),
    Reject,
}

#[derive(Debug, Clone)]
pub enum AOutcome {
    ReducedInput(SubInstance),
    Branches(Vec<BranchResult>),
    DirectSolution(Solution),
    Reject,
}

#[derive(Debug, Clone, Default)]
pub struct CleanOptions {
    /// Worker threads for the top-level search; 0 or 1 runs sequentially.
    pub jobs: usize,
    pub tracer: Option<std::sync::Arc<Tracer>>,
}

impl CleanOptions {
    pub fn traced() -> (Self, std::sync::Arc<Tracer>) {
        let t = std::sync::Arc::new(Tracer::default());
        (CleanOptions { jobs: 1, tracer: Some(t.clone()) }, t)
    }
}
