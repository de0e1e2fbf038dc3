//! Both roots are Q-nodes: the reduction for a single differing child, the
//! local-solution branch, equal child counts, and the fragmentation search.

use crate::root::RootView;
use crate::search::{self, Run};
use crate::{AOutcome, BranchResult, CleanError, CleanOptions, CleaningInstance, SubInstance};
use crate::fragment::AnnotatedFragmentation;
use pqtree::{labeled, LabeledPqTree};
use std::collections::BTreeSet;

/// The two Q-node roots, each in both reading directions.
#[derive(Debug, Clone)]
pub struct QqView {
    pub g: RootView,
    pub g_rev: RootView,
    pub gp: RootView,
    pub gp_rev: RootView,
}

impl QqView {
    /// `None` unless both roots are Q-nodes.
    pub fn new(inst: &CleaningInstance) -> Result<Option<Self>, CleanError> {
        let lt_g = labeled(&inst.g).map_err(|_| CleanError::NotInterval("G"))?;
        let lt_gp = labeled(&inst.gprime).map_err(|_| CleanError::NotInterval("G'"))?;
        Ok(Self::from_trees(inst, &lt_g, &lt_gp))
    }

    pub(crate) fn from_trees(inst: &CleaningInstance, lt_g: &LabeledPqTree, lt_gp: &LabeledPqTree) -> Option<Self> {
        let g = RootView::from_tree(&inst.g, lt_g)?;
        let gp = RootView::from_tree(&inst.gprime, lt_gp)?;
        Some(QqView { g_rev: g.reversed(), gp_rev: gp.reversed(), g, gp })
    }

    /// `G'` root in the requested direction, then its reversal.
    fn pattern(&self, reversed: bool) -> (&RootView, &RootView) {
        if reversed {
            (&self.gp_rev, &self.gp)
        } else {
            (&self.gp, &self.gp_rev)
        }
    }

    /// Candidate blocks for `I_S(j)` with `G'` read in the given direction.
    pub fn branch_on_block(&self, af: &AnnotatedFragmentation, j: usize, k: usize, reversed: bool) -> Vec<search::BlockGuess> {
        search::guesses(&self.g, self.pattern(reversed).0, af, j, k)
    }

    /// Number of (non-trivial fragment, property) pairs that hold, summed
    /// over both reading directions.
    pub fn measure(&self, af: &AnnotatedFragmentation, k: usize, reversed: bool) -> usize {
        let (gp, gp_back) = self.pattern(reversed);
        search::half_measure(&self.g, gp, af, k) + search::half_measure(&self.g_rev, gp_back, &af.reversed(), k)
    }
}

fn differing_children(g: &RootView, gp: &RootView) -> Vec<usize> {
    (1..=g.m).filter(|&i| g.codes[i] != gp.codes[i]).collect()
}

fn single_child_reduction(inst: &CleaningInstance, view: &QqView) -> Option<AOutcome> {
    let g = &view.g;
    if g.m != view.gp.m {
        return None;
    }
    for gp in [&view.gp, &view.gp_rev] {
        if gp.label_counts() != g.label_counts() {
            continue;
        }
        let diff = differing_children(g, gp);
        if let [i] = diff[..] {
            return Some(match SubInstance::induced(&inst.gprime, &gp.children[i], &inst.g, &g.children[i]) {
                Some(sub) => AOutcome::ReducedInput(sub),
                None => AOutcome::Reject,
            });
        }
    }
    None
}

/// The reduced input for equal roots that differ in exactly one child, or a
/// rejection when that child of `G'` is the larger one.
pub fn qq_check_reduced(inst: &CleaningInstance) -> Result<Option<AOutcome>, CleanError> {
    Ok(QqView::new(inst)?.and_then(|view| single_child_reduction(inst, &view)))
}

pub(crate) fn qq_with_view(inst: &CleaningInstance, view: &QqView, opts: &CleanOptions) -> AOutcome {
    if let Some(out) = single_child_reduction(inst, view) {
        return out;
    }
    let g = &view.g;
    let local = [g.children[1].iter().min(), g.children[g.m].iter().min()];
    let mut branches = vec![match local {
        [Some(&a), Some(&b)] => BranchResult::NecessarySet(BTreeSet::from([a, b]).into_iter().collect()),
        _ => BranchResult::Reject,
    }];
    for reversed in [false, true] {
        let (gp, gp_back) = view.pattern(reversed);
        if g.m < gp.m {
            branches.push(BranchResult::Reject);
        } else if g.m == gp.m {
            branches.push(equal_length(inst, g, gp));
        } else {
            let run = Run {
                k: inst.k,
                gprime: &inst.gprime,
                g: &inst.g,
                g_views: [&view.g, &view.g_rev],
                gp_views: [gp, gp_back],
                tracer: opts.tracer.as_deref(),
            };
            let found = run.explore();
            if let Some(BranchResult::Solution(s)) = found.last() {
                return AOutcome::DirectSolution(s.clone());
            }
            branches.extend(found);
        }
    }
    AOutcome::Branches(branches)
}

/// Three-way branching on a local solution and on the two directions of the
/// `G'` root. Assumes the single-child reduction does not apply.
pub fn qq_case(inst: &CleaningInstance, opts: &CleanOptions) -> Result<AOutcome, CleanError> {
    match QqView::new(inst)? {
        Some(view) => Ok(qq_with_view(inst, &view, opts)),
        None => Err(CleanError::Internal("Q-Q case called without two Q-node roots".into())),
    }
}

/// Same number of children: every child and every root label must map onto
/// its own position.
fn equal_length(inst: &CleaningInstance, g: &RootView, gp: &RootView) -> BranchResult {
    let keys: BTreeSet<(usize, usize)> = g.labels.keys().chain(gp.labels.keys()).copied().collect();
    if keys.iter().any(|&(a, b)| g.label_count(a, b) < gp.label_count(a, b)) {
        return BranchResult::Reject;
    }
    if let Some(&(a, b)) = keys.iter().find(|&&(a, b)| g.label_count(a, b) > gp.label_count(a, b)) {
        return BranchResult::NecessarySet(vec![g.label(a, b)[0]]);
    }
    let Some(&i) = differing_children(g, gp).first() else { return BranchResult::Reject };
    match SubInstance::induced(&inst.gprime, &gp.children[i], &inst.g, &g.children[i]) {
        Some(sub) if (1..inst.k).contains(&sub.instance.k) => BranchResult::IndependentSubproblem(sub),
        _ => BranchResult::Reject,
    }
}
