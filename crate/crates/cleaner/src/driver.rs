use crate::qq::{qq_with_view, QqView};
use crate::rules::{self, Prepared};
use crate::{AOutcome, BranchResult, CleanError, CleanOptions, CleaningInstance, Solution};
use graph_core::VertexId;
use pqtree::{are_isomorphic, graph_code, CanonicalCode};
use rayon::prelude::*;
use serde_json::json;
use std::collections::{BTreeSet, HashSet};
use std::sync::Mutex;

type Rule = (&'static str, fn(&Prepared) -> Option<AOutcome>);

const RULES: [Rule; 6] = [
    ("isomorphic_components", rules::isomorphic_components),
    ("many_components", rules::many_components),
    ("disconnected_g", rules::disconnected_g),
    ("universal_g", rules::universal_g),
    ("disconnected_gprime", rules::disconnected_gprime),
    ("universal_gprime", rules::universal_gprime),
];

fn isomorphic(a: &graph_core::IntervalGraph, b: &graph_core::IntervalGraph) -> Result<bool, CleanError> {
    are_isomorphic(a, b).map_err(|e| CleanError::Internal(e.to_string()))
}

fn describe(out: &AOutcome) -> serde_json::Value {
    match out {
        AOutcome::ReducedInput(sub) => json!({"outcome": "reduced", "n_gprime": sub.instance.gprime.n(), "n_g": sub.instance.g.n()}),
        AOutcome::Branches(bs) => json!({"outcome": "branches", "count": bs.len()}),
        AOutcome::DirectSolution(s) => json!({"outcome": "solution", "deleted": s.deleted}),
        AOutcome::Reject => json!({"outcome": "reject"}),
    }
}

/// One step: a reduced input, a bounded branching, a solution, or a rejection.
pub fn algorithm_a(inst: &CleaningInstance, opts: &CleanOptions) -> Result<AOutcome, CleanError> {
    let (rule, out) = step(inst, opts)?;
    if let Some(t) = opts.tracer.as_deref() {
        t.record("rule", 0, rule, 0, describe(&out));
        if let AOutcome::Branches(bs) = &out {
            for (i, b) in bs.iter().enumerate() {
                match b {
                    BranchResult::NecessarySet(set) => {
                        t.check((1..=2 * inst.k + 1).contains(&set.len()), 0, rule, || {
                            format!("necessary set of size {} for k = {}", set.len(), inst.k)
                        });
                        t.record("branch", 0, rule, i, json!({"necessary_set": set}));
                    }
                    BranchResult::IndependentSubproblem(sub) => {
                        let kk = sub.instance.k;
                        t.check((1..inst.k).contains(&kk), 0, rule, || {
                            format!("independent subproblem with parameter {kk} for k = {}", inst.k)
                        });
                        t.record("branch", 0, rule, i, json!({"subproblem_k": kk}));
                    }
                    BranchResult::Solution(s) => t.record("branch", 0, rule, i, json!({"solution": s.deleted})),
                    BranchResult::Reject => t.record("branch", 0, rule, i, json!({"reject": true})),
                }
            }
        }
    }
    Ok(out)
}

fn step(inst: &CleaningInstance, opts: &CleanOptions) -> Result<(&'static str, AOutcome), CleanError> {
    if inst.gprime.n() == 0 {
        let all = Solution { deleted: (0..inst.g.n()).collect() };
        return Ok(("empty_pattern", AOutcome::DirectSolution(all)));
    }
    if inst.k == 0 {
        let out = if isomorphic(&inst.gprime, &inst.g)? {
            AOutcome::DirectSolution(Solution { deleted: Vec::new() })
        } else {
            AOutcome::Reject
        };
        return Ok(("isomorphism", out));
    }
    let prepared = Prepared::new(inst)?;
    for (name, rule) in RULES {
        if let Some(out) = rule(&prepared) {
            return Ok((name, out));
        }
    }
    let view = QqView::from_trees(inst, &prepared.lt_g, &prepared.lt_gp)
        .ok_or_else(|| CleanError::Internal("no rule applies but a root is not a Q-node".into()))?;
    Ok(("qq", qq_with_view(inst, &view, opts)))
}

enum Found {
    Set(BTreeSet<VertexId>),
    Solved(Vec<VertexId>),
}

fn search(inst: CleaningInstance, opts: &CleanOptions) -> Result<Found, CleanError> {
    let mut current = inst;
    let mut map: Vec<VertexId> = (0..current.g.n()).collect();
    loop {
        let lift = |vs: &[VertexId]| vs.iter().map(|&v| map[v]).collect::<Vec<_>>();
        match algorithm_a(&current, opts)? {
            AOutcome::ReducedInput(sub) => {
                map = sub.vertex_map.iter().map(|&v| map[v]).collect();
                current = sub.instance;
            }
            AOutcome::DirectSolution(s) => return Ok(Found::Solved(lift(&s.deleted))),
            AOutcome::Reject => return Ok(Found::Set(BTreeSet::new())),
            AOutcome::Branches(branches) => {
                let mut set = BTreeSet::new();
                for b in branches {
                    match b {
                        BranchResult::NecessarySet(vs) => set.extend(lift(&vs)),
                        BranchResult::IndependentSubproblem(sub) => {
                            let inner = match search(sub.instance.clone(), opts)? {
                                Found::Set(vs) => vs.into_iter().collect(),
                                Found::Solved(vs) => vs,
                            };
                            set.extend(lift(&sub.lift(&inner)));
                        }
                        BranchResult::Solution(s) => return Ok(Found::Solved(lift(&s.deleted))),
                        BranchResult::Reject => {}
                    }
                }
                return Ok(Found::Set(set));
            }
        }
    }
}

/// A set of vertices of `G`, one of which lies in some solution whenever
/// the instance is solvable. Empty means unsolvable. A complete solution
/// found on the way is returned as the set.
pub fn necessary_set(inst: &CleaningInstance, opts: &CleanOptions) -> Result<Vec<VertexId>, CleanError> {
    Ok(match search(inst.clone(), opts)? {
        Found::Set(set) => set.into_iter().collect(),
        Found::Solved(vs) => vs,
    })
}

struct Solver<'a> {
    opts: &'a CleanOptions,
    failed: Mutex<HashSet<CanonicalCode>>,
}

impl Solver<'_> {
    fn code(inst: &CleaningInstance) -> Result<CanonicalCode, CleanError> {
        graph_code(&inst.g).map_err(|e| CleanError::Internal(e.to_string()))
    }

    fn solve(&self, inst: &CleaningInstance, parallel: bool) -> Result<Option<Vec<VertexId>>, CleanError> {
        if inst.k == 0 {
            return Ok(isomorphic(&inst.gprime, &inst.g)?.then(Vec::new));
        }
        let code = Self::code(inst)?;
        if self.failed.lock().expect("memo lock").contains(&code) {
            return Ok(None);
        }
        let candidates = match search(inst.clone(), self.opts)? {
            Found::Solved(vs) => return Ok(Some(vs)),
            Found::Set(set) => set.into_iter().collect::<Vec<_>>(),
        };
        let attempt = |s: VertexId| -> Result<Option<Vec<VertexId>>, CleanError> {
            let (rest, kept) = inst.g.remove_vertices(&[s]);
            let sub = CleaningInstance::unchecked(inst.gprime.clone(), rest);
            Ok(self.solve(&sub, false)?.map(|d| {
                let mut out: Vec<VertexId> = d.iter().map(|&v| kept[v]).collect();
                out.push(s);
                out
            }))
        };
        let found = if parallel {
            candidates.par_iter().find_map_first(|&s| attempt(s).transpose()).transpose()?
        } else {
            let mut hit = None;
            for s in candidates {
                if let Some(d) = attempt(s)? {
                    hit = Some(d);
                    break;
                }
            }
            hit
        };
        if found.is_none() {
            self.failed.lock().expect("memo lock").insert(code);
        }
        Ok(found)
    }
}

/// Deletes `k` vertices of `G` to obtain a copy of `G'`, if possible. The
/// returned set is checked before it is handed out.
pub fn interval_cleaning(inst: &CleaningInstance, opts: &CleanOptions) -> Result<Option<Solution>, CleanError> {
    let solver = Solver { opts, failed: Mutex::new(HashSet::new()) };
    let found = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| CleanError::Internal(e.to_string()))?;
        pool.install(|| solver.solve(inst, true))?
    } else {
        solver.solve(inst, false)?
    };
    let Some(mut deleted) = found else {
        if let Some(t) = opts.tracer.as_deref() {
            t.record("reject", 0, "interval_cleaning", 0, json!({}));
        }
        return Ok(None);
    };
    deleted.sort_unstable();
    deleted.dedup();
    let (rest, _) = inst.g.remove_vertices(&deleted);
    if deleted.len() != inst.k || !isomorphic(&rest, &inst.gprime)? {
        return Err(CleanError::Internal(format!("solution {deleted:?} does not check out")));
    }
    if let Some(t) = opts.tracer.as_deref() {
        t.record("solution", 0, "interval_cleaning", 0, json!({"deleted": deleted}));
    }
    Ok(Some(Solution { deleted }))
}
