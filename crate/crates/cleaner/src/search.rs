//! The branching search over annotated fragmentations for one orientation of
//! the `G'` root, ending in right-alignment saturation and the explicit
//! construction of an isomorphism.

use crate::fragment::AnnotatedFragmentation;
use crate::properties::Eval;
use crate::root::RootView;
use crate::trace::Tracer;
use crate::{BranchResult, Solution, SubInstance};
use graph_core::{IntervalGraph, VertexId};
use serde::Serialize;
use serde_json::json;
use std::collections::{BTreeMap, BTreeSet};

/// A hypothesis for the block of `G` children covered by the image of
/// child `j` of the `G'` root together with its root vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockGuess {
    pub j: usize,
    pub block: (usize, usize),
}

/// Every block inside the window of `j` consistent with the vertex counts
/// on both sides of it.
pub(crate) fn guesses(g: &RootView, gp: &RootView, af: &AnnotatedFragmentation, j: usize, k: usize) -> Vec<BlockGuess> {
    let (lo, hi) = (af.left(j), af.right(j));
    let (before, after) = (gp.w_prefix(j), gp.w_suffix(j));
    let mut out = Vec::new();
    for alpha in lo..=hi {
        let wa = g.w_suffix(alpha);
        if wa < after || wa > after + k {
            continue;
        }
        for beta in alpha..=hi {
            let wb = g.w_prefix(beta);
            if before <= wb && wb <= before + k {
                out.push(BlockGuess { j, block: (alpha, beta) });
            }
        }
    }
    out
}

pub(crate) fn half_measure(g: &RootView, gp: &RootView, af: &AnnotatedFragmentation, k: usize) -> usize {
    Eval::new(g, gp, af, k).half_measure()
}

#[derive(Debug, Clone)]
struct State {
    af: AnnotatedFragmentation,
    flipped: bool,
    chain: usize,
}

enum Step {
    Leaf(BranchResult),
    Next(State, Option<usize>),
}

pub(crate) struct Run<'a> {
    pub k: usize,
    pub gprime: &'a IntervalGraph,
    pub g: &'a IntervalGraph,
    /// Index 0 is the orientation the run starts in, index 1 its reversal.
    pub g_views: [&'a RootView; 2],
    pub gp_views: [&'a RootView; 2],
    pub tracer: Option<&'a Tracer>,
}

fn necessary(mut set: Vec<VertexId>) -> Step {
    set.sort_unstable();
    set.dedup();
    Step::Leaf(BranchResult::NecessarySet(set))
}

fn reject() -> Step {
    Step::Leaf(BranchResult::Reject)
}

impl<'a> Run<'a> {
    fn views(&self, flipped: bool) -> (&'a RootView, &'a RootView) {
        let i = usize::from(flipped);
        (self.g_views[i], self.gp_views[i])
    }

    fn trace(&self, event: &str, chain: usize, rule: &str, payload: serde_json::Value) {
        if let Some(t) = self.tracer {
            t.record(event, chain, rule, 0, payload);
        }
    }

    fn measure(&self, s: &State) -> usize {
        let (g, gp) = self.views(s.flipped);
        let (gr, gpr) = self.views(!s.flipped);
        half_measure(g, gp, &s.af, self.k) + half_measure(gr, gpr, &s.af.reversed(), self.k)
    }

    fn depth_limit(&self) -> usize {
        let k = self.k;
        8 * k * k * k + 76 * k * k
    }

    /// Depth-first over the search tree; stops at the first solution.
    pub fn explore(&self) -> Vec<BranchResult> {
        let m_source = self.gp_views[0].m;
        let m_target = self.g_views[0].m;
        let start = State { af: AnnotatedFragmentation::initial(m_source, m_target), flipped: false, chain: 0 };
        let mut stack = vec![start];
        let mut out = Vec::new();
        while let Some(state) = stack.pop() {
            let steps = self.process(&state);
            let mut children = Vec::new();
            for step in steps {
                match step {
                    Step::Leaf(BranchResult::Solution(s)) => {
                        out.push(BranchResult::Solution(s));
                        return out;
                    }
                    Step::Leaf(r) => out.push(r),
                    Step::Next(next, split_ell) => {
                        if let (Some(t), Some(ell)) = (self.tracer, split_ell) {
                            let before = self.measure(&state);
                            let after = self.measure(&next);
                            self.trace("split", next.chain, "fragmentation", json!({"property": ell, "mu_before": before, "mu_after": after}));
                            let grows = if ell == 8 { after >= before } else { after > before };
                            t.check(grows, next.chain, "fragmentation", || {
                                format!("measure went from {before} to {after} across a split for property {ell}")
                            });
                        }
                        children.push(next);
                    }
                }
            }
            stack.extend(children.into_iter().rev());
        }
        out
    }

    fn process(&self, state: &State) -> Vec<Step> {
        let k = self.k;
        if let Some(t) = self.tracer {
            t.check(state.af.check().is_ok(), state.chain, "fragmentation", || {
                format!("fragmentation invariant broken: {:?}", state.af.check())
            });
            t.check(state.chain <= self.depth_limit(), state.chain, "fragmentation", || {
                format!("branching chain of length {} exceeds {}", state.chain, self.depth_limit())
            });
            self.trace(
                "state",
                state.chain,
                "fragmentation",
                json!({"fragments": state.af.fragments, "nontrivial": state.af.nontrivial_count(), "flipped": state.flipped}),
            );
        }
        if state.af.nontrivial_count() > 2 * k {
            self.trace("reject", state.chain, "fragment_limit", json!({"nontrivial": state.af.nontrivial_count()}));
            return vec![reject()];
        }
        let (g, gp) = self.views(state.flipped);
        let (gr, gpr) = self.views(!state.flipped);
        let reversed = state.af.reversed();
        let ev = Eval::new(g, gp, &state.af, k);
        let evr = Eval::new(gr, gpr, &reversed, k);
        let mut found = None;
        for ell in 1..=10 {
            if let Some(j) = ev.first_violation(ell) {
                found = Some((ell, j, false));
                break;
            }
            if ell <= 9 {
                if let Some(j) = evr.first_violation(ell) {
                    found = Some((ell, j, true));
                    break;
                }
            }
        }
        let Some((ell, j, flip)) = found else {
            return vec![self.finish(state)];
        };
        let (state, ev) = if flip {
            (State { af: reversed.clone(), flipped: !state.flipped, chain: state.chain }, evr)
        } else {
            (state.clone(), ev)
        };
        self.trace("violation", state.chain, "fragmentation", json!({"property": ell, "index": j, "flipped": state.flipped}));
        let options = guesses(ev.g, ev.gp, ev.af, j, k);
        if let Some(t) = self.tracer {
            t.check(options.len() <= (k + 1) * (k + 1), state.chain, "fragmentation", || {
                format!("{} block guesses for index {j}", options.len())
            });
        }
        let mut steps = Vec::new();
        for guess in options {
            steps.extend(self.handle(&ev, &state, ell, guess, true));
        }
        steps
    }

    fn advance(&self, state: &State, af: AnnotatedFragmentation) -> State {
        State { af, flipped: state.flipped, chain: state.chain + 1 }
    }

    /// Dispatch on the type of index the guess makes `j`.
    fn handle(&self, ev: &Eval, state: &State, ell: usize, guess: BlockGuess, left_allowed: bool) -> Vec<Step> {
        let j = guess.j;
        let (alpha, beta) = guess.block;
        if alpha < beta {
            return vec![self.wide(ev, alpha, beta)];
        }
        let f = *ev.af.fragment(j);
        if alpha == ev.left(j) {
            debug_assert!(left_allowed);
            return self.left_aligned(ev, state, ell, j);
        }
        if j == f.source.0 {
            let a = f.target.0;
            let pool: Vec<VertexId> = ev.g.start_side(a).chain(ev.g.ends[a].iter().copied()).collect();
            return vec![pool.iter().min().map_or_else(reject, |&v| necessary(vec![v]))];
        }
        if alpha == ev.right(j) {
            let mut af = ev.af.right_split(j).expect("index is not first in its fragment");
            if ell <= 9 {
                af.mark_trivial_important();
            }
            return vec![Step::Next(self.advance(state, af), (ell <= 9).then_some(ell))];
        }
        let mut af = ev.af.skew_split(j, alpha).expect("skew block lies strictly inside the window");
        af.mark_trivial_important();
        vec![Step::Next(self.advance(state, af), None)]
    }

    /// A root vertex of `G` crossing the guessed block yields a pair one of
    /// whose members must be deleted.
    fn wide(&self, ev: &Eval, alpha: usize, beta: usize) -> Step {
        let mut roots: Vec<(VertexId, (usize, usize))> = ev.g.root_vertices().collect();
        roots.sort_unstable();
        for (z, (z1, z2)) in roots {
            let partner = if z1 < alpha && alpha <= z2 && z2 < beta {
                ev.g.start_side(beta).min()
            } else if alpha < z1 && z1 <= beta && beta < z2 {
                ev.g.end_side(alpha).min()
            } else {
                continue;
            };
            return partner.map_or_else(reject, |p| necessary(vec![z, p]));
        }
        reject()
    }

    fn escalate(&self, ev: &Eval, state: &State, y: usize, allow_skew: bool) -> Vec<Step> {
        let (lo, hi) = (ev.left(y), ev.right(y));
        guesses(ev.g, ev.gp, ev.af, y, self.k)
            .into_iter()
            .filter(|gs| {
                let (a, b) = gs.block;
                a < b || (allow_skew && lo < a && a < hi)
            })
            .flat_map(|gs| self.handle(ev, state, 0, gs, false))
            .collect()
    }

    fn left_aligned(&self, ev: &Eval, state: &State, ell: usize, j: usize) -> Vec<Step> {
        let (g, gp, k) = (ev.g, ev.gp, self.k);
        let lj = ev.left(j);
        let step = match ell {
            1 => {
                let sub = SubInstance::induced(self.gprime, &gp.children[j], self.g, &g.children[lj]);
                match sub {
                    Some(s) if (1..k).contains(&s.instance.k) => Step::Leaf(BranchResult::IndependentSubproblem(s)),
                    _ => reject(),
                }
            }
            3 => {
                let (pp, pm) = (gp.starts[j].len(), gp.ends[j].len());
                let (qp, qm) = (g.starts[lj].len(), g.ends[lj].len());
                if qp < pp || qm < pm || pp > k || pm > k {
                    reject()
                } else if qp != pp {
                    necessary(g.starts[lj][..=pp].to_vec())
                } else {
                    necessary(g.ends[lj][..=pm].to_vec())
                }
            }
            4 => {
                let y = ev.label_mismatch_in_fragment(j).expect("property 4 fails at j");
                self.count_step(gp.label_count(y, j), g.label(ev.left(y), lj))
            }
            6 => {
                let y = ev.cross_ending_at(j).expect("property 6 fails at j");
                return self.escalate(ev, state, y, true);
            }
            7 => {
                let (y1, y2) = ev.conflict_at(j).expect("property 7 fails at j");
                if y1 < y2 {
                    reject()
                } else {
                    return self.escalate(ev, state, y1, false);
                }
            }
            8 => self.short_gap(ev, j),
            10 => {
                let (u, p, _) = ev.important_mismatch(j).expect("property 10 fails at j");
                let (a, b) = if u > j { (j, u) } else { (u, j) };
                self.count_step(p, g.label(ev.left(a), ev.left(b)))
            }
            _ => reject(),
        };
        vec![step]
    }

    /// Twin class of `G` that must lose a member when it outnumbers the
    /// class of `G'` it receives.
    fn count_step(&self, wanted: usize, available: &[VertexId]) -> Step {
        if wanted >= available.len() {
            reject()
        } else {
            necessary(vec![available[0]])
        }
    }

    fn short_gap(&self, ev: &Eval, j: usize) -> Step {
        let key = ev.lr_critical_pair(j).expect("property 8 fails at j");
        let data = &ev.pairs[&key];
        let f = ev.af.fragments[key.0];
        let yr = data.right_min().expect("an LR-critical index needs a right vertex");
        let (source, target) = if yr < f.source.0 + f.slack() {
            ((f.source.0, yr), (f.target.0, ev.right(yr)))
        } else {
            match data.left_max() {
                Some(yl) if yl < yr => ((yl, yr), (ev.left(yl), ev.right(yr))),
                _ => return reject(),
            }
        };
        let wanted: usize = (source.0..=source.1).map(|t| ev.gp.start_side(t).count()).sum();
        let mut pool: Vec<VertexId> = (target.0..=target.1).flat_map(|i| ev.g.start_side(i)).collect();
        pool.sort_unstable();
        if pool.len() <= wanted || wanted + 1 > 2 * self.k + 1 {
            return reject();
        }
        necessary(pool[..=wanted].to_vec())
    }

    fn finish(&self, state: &State) -> Step {
        let (g, gp) = self.views(state.flipped);
        let af = match self.saturate(g, gp, state.af.clone()) {
            Ok(af) => af,
            Err(step) => return step,
        };
        self.trace("proper", state.chain, "isomorphism", json!({"fragments": af.fragments}));
        match self.build(g, gp, &af) {
            Some(deleted) => Step::Leaf(BranchResult::Solution(Solution { deleted })),
            None => reject(),
        }
    }

    /// Applies the right-alignment consequences until none is left.
    fn saturate(&self, g: &RootView, gp: &RootView, mut af: AnnotatedFragmentation) -> Result<AnnotatedFragmentation, Step> {
        let mp = gp.m;
        'outer: loop {
            let mut candidates: BTreeSet<(usize, usize)> = gp.labels.keys().copied().collect();
            let mut by_left: BTreeMap<usize, usize> = BTreeMap::new();
            let mut by_right: BTreeMap<usize, usize> = BTreeMap::new();
            for j in 1..=mp {
                if af.is_trivial_index(j) {
                    by_left.insert(af.left(j), j);
                }
                if af.right_constrained.contains(&j) {
                    by_right.insert(af.right(j), j);
                }
            }
            for &(c, d) in g.labels.keys() {
                if let (Some(&a), Some(&b)) = (by_left.get(&c), by_left.get(&d)) {
                    candidates.insert((a, b));
                }
                if let (Some(&a), Some(&b)) = (by_left.get(&c), by_right.get(&d)) {
                    candidates.insert((a, b));
                }
            }
            for (a, b) in candidates {
                if a >= b {
                    continue;
                }
                let present = gp.label_count(a, b) > 0;
                let (ta, tb) = (af.is_trivial_index(a), af.is_trivial_index(b));
                let (ua, ub) = (af.important.contains(&a), af.important.contains(&b));
                let (wa, wb) = (af.right_constrained.contains(&a), af.right_constrained.contains(&b));
                if present && ta && !ua && !tb && !af.is_fragment_end(b) {
                    af = af.right_split(b + 1).expect("b is not last in its fragment");
                    continue 'outer;
                }
                if present && !ta && !wa && ((tb && !ub) || wb) {
                    af.right_constrained.insert(a);
                    if !af.is_fragment_end(a) {
                        af = af.right_split(a + 1).expect("a is not last in its fragment");
                    }
                    continue 'outer;
                }
                if ua && wb {
                    let target = g.label(af.left(a), af.right(b));
                    if gp.label_count(a, b) != target.len() {
                        return Err(self.count_step(gp.label_count(a, b), target));
                    }
                }
                if ta && tb {
                    let target = g.label(af.left(a), af.left(b));
                    if gp.label_count(a, b) != target.len() {
                        return Err(self.count_step(gp.label_count(a, b), target));
                    }
                }
            }
            return Ok(af);
        }
    }

    /// Maps `G'` into `G` child by child and twin class by twin class, then
    /// checks the result. Returns the deleted vertices on success.
    fn build(&self, g: &RootView, gp: &RootView, af: &AnnotatedFragmentation) -> Option<Vec<VertexId>> {
        #[derive(Clone, Copy, PartialEq, Eq)]
        enum Kind {
            Plain,
            Constrained,
            Important,
            Loose,
        }
        let mp = gp.m;
        let kind = |j: usize| {
            if af.right_constrained.contains(&j) {
                Kind::Constrained
            } else if !af.is_trivial_index(j) {
                Kind::Plain
            } else if af.important.contains(&j) {
                Kind::Important
            } else {
                Kind::Loose
            }
        };
        let delta = |j: usize| if kind(j) == Kind::Constrained { af.right(j) } else { af.left(j) };
        let mut phi = vec![usize::MAX; self.gprime.n()];
        for j in 1..=mp {
            let (src, dst) = (&gp.children[j], &g.children[delta(j)]);
            if src.len() != dst.len() {
                return None;
            }
            if src.is_empty() {
                continue;
            }
            let h1 = self.gprime.induced_subgraph(src).expect("child ids");
            let h2 = self.g.induced_subgraph(dst).expect("child ids");
            let iso = pqtree::extract_isomorphism(&h1, &h2).ok()?;
            for (i, &v) in src.iter().enumerate() {
                phi[v] = dst[iso[i]];
            }
        }
        let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (&(a, b), members) in &gp.labels {
            let (ka, kb) = (kind(a), kind(b));
            let end_b = af.is_fragment_end(b);
            let preferred = match (ka, kb) {
                (Kind::Constrained, Kind::Plain | Kind::Important) => (af.left(a), delta(b)),
                (Kind::Loose, Kind::Plain) if end_b => (delta(a), af.right(b)),
                _ => (delta(a), delta(b)),
            };
            let candidates = [preferred, (delta(a), delta(b)), (af.left(a), delta(b)), (delta(a), af.right(b))];
            let target = candidates
                .into_iter()
                .find(|&blk| !used.contains(&blk) && g.label_count(blk.0, blk.1) == members.len())?;
            used.insert(target);
            for (&v, &w) in members.iter().zip(g.label(target.0, target.1)) {
                phi[v] = w;
            }
        }
        if phi.iter().any(|&x| x == usize::MAX) {
            return None;
        }
        let image: BTreeSet<VertexId> = phi.iter().copied().collect();
        if image.len() != phi.len() {
            return None;
        }
        let n = self.gprime.n();
        for u in 0..n {
            for v in u + 1..n {
                if self.gprime.has_edge(u, v) != self.g.has_edge(phi[u], phi[v]) {
                    return None;
                }
            }
        }
        let deleted: Vec<VertexId> = (0..self.g.n()).filter(|v| !image.contains(v)).collect();
        let (rest, _) = self.g.remove_vertices(&deleted);
        if !pqtree::are_isomorphic(&rest, self.gprime).unwrap_or(false) {
            return None;
        }
        Some(deleted)
    }
}
