use cleaner::{
    algorithm_a, interval_cleaning, rule_disconnected_g, rule_disconnected_gprime, rule_isomorphic_components,
    rule_many_components, rule_universal_g, rule_universal_gprime, AOutcome, BranchResult, CleanOptions,
    CleaningInstance,
};
use graph_core::{IntervalGraph, VertexId};
use graph_core::Interval;
use oracle::{brute_force_iso, plant_instance, random_chain_interval_graph, random_interval_graph, rng};
use rand::seq::SliceRandom;
use rand::Rng;
use pqtree::are_isomorphic;

fn path(n: usize) -> IntervalGraph {
    IntervalGraph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
}

fn clique(n: usize) -> IntervalGraph {
    let mut e = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            e.push((u, v));
        }
    }
    IntervalGraph::from_edges(n, &e).unwrap()
}

fn union(a: &IntervalGraph, b: &IntervalGraph) -> IntervalGraph {
    let mut e: Vec<(VertexId, VertexId)> = a.edges().collect();
    e.extend(b.edges().map(|(u, v)| (u + a.n(), v + a.n())));
    IntervalGraph::from_edges(a.n() + b.n(), &e).unwrap()
}

/// `g` plus one vertex adjacent to everything.
fn cone(g: &IntervalGraph) -> IntervalGraph {
    let mut e: Vec<(VertexId, VertexId)> = g.edges().collect();
    e.extend((0..g.n()).map(|v| (v, g.n())));
    IntervalGraph::from_edges(g.n() + 1, &e).unwrap()
}

fn all_solutions(gp: &IntervalGraph, g: &IntervalGraph) -> Vec<Vec<VertexId>> {
    let k = g.n() - gp.n();
    let mut out = Vec::new();
    let mut subset: Vec<VertexId> = (0..k).collect();
    loop {
        if brute_force_iso(gp, &g.remove_vertices(&subset).0).unwrap().is_some() {
            out.push(subset.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if subset[i] < g.n() - k + i {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Deletes `k` random vertices of `g`; returns the shuffled rest.
fn plant(g: &IntervalGraph, k: usize, seed: u64) -> IntervalGraph {
    let mut r = rng(seed);
    let mut all: Vec<VertexId> = (0..g.n()).collect();
    all.shuffle(&mut r);
    let rest = g.remove_vertices(&all[..k]).0;
    let mut perm: Vec<VertexId> = (0..rest.n()).collect();
    perm.shuffle(&mut r);
    rest.relabel(&perm)
}

/// `blocks` small cliques or paths far apart, joined by `k` long intervals.
/// Deleting the long ones leaves `blocks` components.
fn bridged_blocks(blocks: usize, k: usize, seed: u64) -> (IntervalGraph, IntervalGraph) {
    let mut r = rng(seed);
    let mut model = Vec::new();
    for b in 0..blocks as i64 {
        let base = 10 * b;
        match r.gen_range(0..3) {
            0 => model.push(Interval::new(base, base + 2)),
            1 => model.extend([Interval::new(base, base + 2), Interval::new(base + 1, base + 3)]),
            _ => model.extend([Interval::new(base, base + 1), Interval::new(base, base + 1)]),
        }
    }
    let core = model.len();
    for _ in 0..k {
        let a = r.gen_range(0..blocks as i64);
        let b = r.gen_range(a..blocks as i64);
        model.push(Interval::new(10 * a + 1, 10 * b + 1));
    }
    let g = IntervalGraph::from_intervals(model).unwrap();
    let keep: Vec<VertexId> = (0..core).collect();
    (g.induced_subgraph(&keep).unwrap(), g)
}

fn solvable(gp: &IntervalGraph, g: &IntervalGraph) -> bool {
    let inst = CleaningInstance::new(gp.clone(), g.clone()).unwrap();
    interval_cleaning(&inst, &CleanOptions::default()).unwrap().is_some()
}

fn sets(out: &AOutcome) -> Vec<Vec<VertexId>> {
    match out {
        AOutcome::Branches(bs) => bs
            .iter()
            .filter_map(|b| match b {
                BranchResult::NecessarySet(s) => Some(s.clone()),
                _ => None,
            })
            .collect(),
        _ => Vec::new(),
    }
}

/// Some emitted set meets some solution.
fn hits_a_solution(out: &AOutcome, gp: &IntervalGraph, g: &IntervalGraph) -> bool {
    let sols = all_solutions(gp, g);
    sets(out).iter().any(|s| sols.iter().any(|sol| s.iter().any(|v| sol.contains(v))))
}

#[test]
fn matching_components_are_removed() {
    let g = union(&path(5), &clique(3));
    let gp = union(&path(4), &clique(3));
    let inst = CleaningInstance::new(gp, g).unwrap();
    let Some(AOutcome::ReducedInput(sub)) = rule_isomorphic_components(&inst).unwrap() else { panic!("rule applies") };
    assert!(are_isomorphic(&sub.instance.gprime, &path(4)).unwrap());
    assert!(are_isomorphic(&sub.instance.g, &path(5)).unwrap());
    assert_eq!(sub.vertex_map, vec![0, 1, 2, 3, 4]);
}

#[test]
fn no_matching_components() {
    let inst = CleaningInstance::new(path(4), path(5)).unwrap();
    assert!(rule_isomorphic_components(&inst).unwrap().is_none());
}

#[test]
fn component_removal_keeps_solvability() {
    for seed in 0..150u64 {
        let (gp, g) = if seed % 2 == 0 {
            let p = plant_instance(8, 2, seed, 0.2);
            (p.gprime, p.g)
        } else {
            (random_interval_graph(6, seed, 0.2), random_interval_graph(8, seed + 1, 0.2))
        };
        let inst = CleaningInstance::new(gp.clone(), g.clone()).unwrap();
        if let Some(AOutcome::ReducedInput(sub)) = rule_isomorphic_components(&inst).unwrap() {
            assert_eq!(solvable(&gp, &g), solvable(&sub.instance.gprime, &sub.instance.g), "seed {seed}");
            assert!(sub.instance.gprime.n() + sub.instance.g.n() < gp.n() + g.n());
        }
    }
}

#[test]
fn too_many_components_in_g() {
    let g = union(&union(&path(2), &path(2)), &path(2));
    let inst = CleaningInstance::new(path(5), g).unwrap();
    assert!(matches!(rule_disconnected_g(&inst).unwrap(), Some(AOutcome::Reject)));
}

#[test]
fn split_subproblems_have_smaller_parameter() {
    for seed in 0..200u64 {
        let p = plant_instance(9, 3, seed, 0.15);
        let inst = CleaningInstance::new(p.gprime.clone(), p.g.clone()).unwrap();
        if rule_isomorphic_components(&inst).unwrap().is_some() || rule_many_components(&inst).unwrap().is_some() {
            continue;
        }
        if let Some(AOutcome::Branches(bs)) = rule_disconnected_g(&inst).unwrap() {
            for b in &bs {
                let BranchResult::IndependentSubproblem(sub) = b else { panic!("only subproblems") };
                assert!((1..inst.k).contains(&sub.instance.k), "seed {seed}");
            }
            let any_solvable = bs.iter().any(|b| match b {
                BranchResult::IndependentSubproblem(sub) => solvable(&sub.instance.gprime, &sub.instance.g),
                _ => false,
            });
            assert!(any_solvable, "seed {seed}: no branch is solvable");
        }
    }
}

#[test]
fn universal_vertex_without_partner_is_necessary() {
    let g = cone(&path(4));
    let inst = CleaningInstance::new(path(4), g).unwrap();
    let out = rule_universal_g(&inst).unwrap().unwrap();
    assert_eq!(sets(&out), vec![vec![4]]);
}

#[test]
fn universal_vertices_are_paired_off() {
    let inst = CleaningInstance::new(path(2), path(3)).unwrap();
    let Some(AOutcome::ReducedInput(sub)) = rule_universal_g(&inst).unwrap() else { panic!("rule applies") };
    assert_eq!(sub.instance.gprime.n(), 1);
    assert_eq!(sub.instance.g.n(), 2);
    assert_eq!(sub.instance.g.edge_count(), 0);
    assert_eq!(sub.vertex_map, vec![0, 2]);
}

#[test]
fn universal_reduction_keeps_solvability() {
    for seed in 0..150u64 {
        let p = plant_instance(8, 2, seed, 0.9);
        let inst = CleaningInstance::new(p.gprime.clone(), p.g.clone()).unwrap();
        if let Some(AOutcome::ReducedInput(sub)) = rule_universal_g(&inst).unwrap() {
            assert!(solvable(&sub.instance.gprime, &sub.instance.g), "seed {seed}");
        }
    }
}

struct Pair {
    gprime: IntervalGraph,
    g: IntervalGraph,
}

fn first_applying(inst: &CleaningInstance) -> usize {
    let rules = [
        rule_isomorphic_components,
        rule_many_components,
        rule_disconnected_g,
        rule_universal_g,
        rule_disconnected_gprime,
        rule_universal_gprime,
    ];
    rules.iter().position(|r| r(inst).unwrap().is_some()).unwrap_or(rules.len())
}

#[test]
fn disconnected_pattern_yields_edges() {
    let mut seen = 0;
    for seed in 0..400u64 {
        let g = random_chain_interval_graph(9, seed, 2);
        let p = (plant(&g, 1 + (seed % 2) as usize, seed), g);
        let p = Pair { gprime: p.0, g: p.1 };
        let inst = CleaningInstance::new(p.gprime.clone(), p.g.clone()).unwrap();
        if first_applying(&inst) != 4 {
            continue;
        }
        seen += 1;
        let out = rule_disconnected_gprime(&inst).unwrap().unwrap();
        for s in sets(&out) {
            assert_eq!(s.len(), 2);
            assert!(p.g.has_edge(s[0], s[1]));
        }
        assert!(hits_a_solution(&out, &p.gprime, &p.g), "seed {seed}");
    }
    assert!(seen > 10, "only {seen} instances reached the rule");
}

#[test]
fn universal_pattern_vertex_yields_far_pair() {
    let mut seen = 0;
    for seed in 0..400u64 {
        let g = random_chain_interval_graph(9, seed, 5);
        let p = Pair { gprime: plant(&g, 1 + (seed % 2) as usize, seed), g };
        let inst = CleaningInstance::new(p.gprime.clone(), p.g.clone()).unwrap();
        if first_applying(&inst) != 5 {
            continue;
        }
        seen += 1;
        let out = rule_universal_gprime(&inst).unwrap().unwrap();
        let s = &sets(&out)[0];
        assert_eq!(s.len(), 2);
        assert!((0..p.g.n()).all(|v| !(p.g.has_edge(v, s[0]) && p.g.has_edge(v, s[1]))));
        assert!(hits_a_solution(&out, &p.gprime, &p.g), "seed {seed}");
    }
    assert!(seen > 10, "only {seen} instances reached the rule");
}

#[test]
fn many_components_locate_a_neighbourhood() {
    let mut seen = 0;
    for seed in 0..600u64 {
        let k = 1 + (seed % 2) as usize;
        let (gprime, g) = bridged_blocks(4 * k + 1 + (seed % 2) as usize, k, seed);
        if g.n() > 12 {
            continue;
        }
        let p = Pair { gprime, g };
        let inst = CleaningInstance::new(p.gprime.clone(), p.g.clone()).unwrap();
        if first_applying(&inst) != 1 {
            continue;
        }
        seen += 1;
        let out = rule_many_components(&inst).unwrap().unwrap();
        assert!(sets(&out).iter().all(|s| s.len() == 1));
        assert!(hits_a_solution(&out, &p.gprime, &p.g), "seed {seed}");
    }
    assert!(seen > 10, "only {seen} instances reached the rule");
}

#[test]
fn algorithm_a_on_paths() {
    let inst = CleaningInstance::new(path(4), path(5)).unwrap();
    let out = algorithm_a(&inst, &CleanOptions::default()).unwrap();
    let AOutcome::Branches(bs) = out else { panic!("expected branching") };
    for b in &bs {
        if let BranchResult::NecessarySet(s) = b {
            assert!(!s.is_empty() && s.len() <= 3);
        }
    }
}
