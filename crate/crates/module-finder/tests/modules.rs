use graph_core::{io::parse_model, is_complete_module, IntervalGraph, VertexId};
use module_finder::{
    complete_modules, h_short_complete_modules, occurrences_as_complete_module, occurrences_as_short_module,
    CompleteModule, Witness,
};
use oracle::{brute_force_iso, random_interval_graph, rng};
use pqtree::labeled;
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeSet;

const TWO_LEVEL_MODEL: &str = "\
0 1 2\n1 1 1\n2 2 2\n3 3 3\n4 3 3\n5 4 4\n6 5 5\n7 5 6\n8 5 7\n9 5 8\n\
10 6 9\n11 7 9\n12 8 9\n13 9 9\n14 6 8\n15 6 8\n16 1 4\n17 3 9\n";

fn two_level() -> IntervalGraph {
    IntervalGraph::from_intervals(parse_model(TWO_LEVEL_MODEL).unwrap()).unwrap()
}

fn sets(ms: &[CompleteModule]) -> BTreeSet<Vec<VertexId>> {
    ms.iter().map(|m| m.vertices.clone()).collect()
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<VertexId>> {
    (1u32..1 << n).map(move |mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
}

fn brute_complete(g: &IntervalGraph) -> BTreeSet<Vec<VertexId>> {
    subsets(g.n()).filter(|m| is_complete_module(g, m).unwrap()).collect()
}

fn independent(g: &IntervalGraph, a: &[VertexId], b: &[VertexId]) -> bool {
    a.iter().all(|&u| b.iter().all(|&w| u != w && !g.has_edge(u, w)))
}

fn disjoint(a: &[VertexId], b: &[VertexId]) -> bool {
    a.iter().all(|u| !b.contains(u))
}

#[test]
fn two_level_example_modules() {
    let g = two_level();
    let lt = labeled(&g).unwrap();
    let ms = complete_modules(&g, &lt);
    let got = sets(&ms);
    let c_to_e: Vec<VertexId> = (6..=15).collect();
    for want in [vec![0, 1, 2], vec![3, 4], c_to_e] {
        let m = ms.iter().find(|m| m.vertices == want).unwrap();
        assert!(matches!(m.witness, Witness::SubtreeNode(_)));
        assert!(!m.simple);
    }
    let e = ms.iter().find(|m| m.vertices == [14, 15]).unwrap();
    assert!(e.simple);
    assert!(matches!(e.witness, Witness::QBlock { .. }));
    assert!(!got.contains(&vec![0]));
    assert!(!got.contains(&vec![1, 2]));
    assert_eq!(got, brute_complete(&g));

    let short = sets(&h_short_complete_modules(&g, &lt, 2));
    assert!(short.contains(&vec![14, 15]));
    assert!(short.contains(&vec![3, 4]));

    let k2 = IntervalGraph::from_edges(2, &[(0, 1)]).unwrap();
    let occ = occurrences_as_short_module(&k2, &g, &lt, 2).unwrap();
    assert!(occ.contains(&vec![14, 15]));
    assert!(occ.contains(&vec![3, 4]));
}

#[test]
fn path_three_and_single_vertex_pattern() {
    let g = IntervalGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
    let lt = labeled(&g).unwrap();
    assert_eq!(sets(&complete_modules(&g, &lt)), [vec![0], vec![2], vec![0, 1, 2]].into());
    let k1 = IntervalGraph::empty(1);
    let mut occ = occurrences_as_complete_module(&k1, &g, &lt);
    occ.sort();
    assert_eq!(occ, vec![vec![0], vec![2]]);
    let k3 = IntervalGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
    assert!(occurrences_as_complete_module(&k3, &g, &lt).is_empty());
    assert!(occurrences_as_short_module(&IntervalGraph::empty(1), &g, &lt, 0).unwrap().len() == 2);
}

#[test]
fn zero_short_means_leaf_witnesses_only() {
    for seed in 0..60 {
        let g = random_interval_graph(12, seed, 0.35);
        let lt = labeled(&g).unwrap();
        for m in h_short_complete_modules(&g, &lt, 0) {
            let Witness::SubtreeNode(z) = m.witness else { panic!("block witness at h=0") };
            assert!(lt.children(z).is_empty());
        }
    }
}

#[test]
fn vacuous_shortness_gives_all_clique_modules() {
    for seed in 0..60 {
        let g = random_interval_graph(12, seed, 0.4);
        let lt = labeled(&g).unwrap();
        let all = complete_modules(&g, &lt);
        let cliques: BTreeSet<Vec<VertexId>> =
            all.iter().filter(|m| g.is_clique(&m.vertices)).map(|m| m.vertices.clone()).collect();
        assert_eq!(sets(&h_short_complete_modules(&g, &lt, g.n())), cliques);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn enumeration_matches_definition(seed in 0u64..100_000, n in 1usize..=10, knob in 0.1f64..0.8) {
        let g = random_interval_graph(n, seed, knob);
        let lt = labeled(&g).unwrap();
        let ms = complete_modules(&g, &lt);
        prop_assert_eq!(ms.len(), sets(&ms).len());
        prop_assert_eq!(sets(&ms), brute_complete(&g));
        for m in &ms {
            prop_assert_eq!(m.simple, matches!(m.witness, Witness::QBlock { .. }));
            if m.simple {
                prop_assert!(g.is_clique(&m.vertices));
            }
        }
    }

    #[test]
    fn occurrences_match_brute_force_and_are_disjoint(seed in 0u64..100_000, n in 2usize..=9, knob in 0.1f64..0.6) {
        let g = random_interval_graph(n, seed, knob);
        let lt = labeled(&g).unwrap();
        let ms = complete_modules(&g, &lt);
        let pick = ms[seed as usize % ms.len()].vertices.clone();
        let pattern = g.induced_subgraph(&pick).unwrap();
        let occ = occurrences_as_complete_module(&pattern, &g, &lt);
        let brute: BTreeSet<Vec<VertexId>> = brute_complete(&g)
            .into_iter()
            .filter(|m| m.len() == pattern.n())
            .filter(|m| brute_force_iso(&g.induced_subgraph(m).unwrap(), &pattern).unwrap().is_some())
            .collect();
        prop_assert_eq!(occ.iter().cloned().collect::<BTreeSet<_>>(), brute);
        let all: Vec<VertexId> = (0..pattern.n()).collect();
        let clique = pattern.is_clique(&all);
        for (i, a) in occ.iter().enumerate() {
            for b in &occ[i + 1..] {
                prop_assert!(disjoint(a, b));
                if !clique {
                    prop_assert!(independent(&g, a, b));
                }
            }
        }
    }

    #[test]
    fn short_occurrences_are_filtered_unrestricted_ones(seed in 0u64..100_000, n in 2usize..=14, size in 1usize..=3, h in 0usize..=3) {
        let g = random_interval_graph(n, seed, 0.3);
        let lt = labeled(&g).unwrap();
        let edges: Vec<(usize, usize)> = (0..size).flat_map(|u| (u + 1..size).map(move |w| (u, w))).collect();
        let pattern = IntervalGraph::from_edges(size, &edges).unwrap();
        let short = occurrences_as_short_module(&pattern, &g, &lt, h).unwrap();
        let all = complete_modules(&g, &lt);
        let want: Vec<Vec<VertexId>> = occurrences_as_complete_module(&pattern, &g, &lt)
            .into_iter()
            .filter(|o| all.iter().any(|m| &m.vertices == o && m.is_short(h)))
            .collect();
        prop_assert_eq!(short, want);
    }
}

/// Greedy pairwise-disjoint (and optionally pairwise-independent) family.
fn greedy_family(g: &IntervalGraph, ms: &[CompleteModule], independent_too: bool) -> Vec<CompleteModule> {
    let mut out: Vec<CompleteModule> = Vec::new();
    for m in ms {
        if out.iter().all(|o| disjoint(&o.vertices, &m.vertices) && (!independent_too || independent(g, &o.vertices, &m.vertices))) {
            out.push(m.clone());
        }
    }
    out
}

fn lifted(kept: &[VertexId], m: &[VertexId]) -> Vec<VertexId> {
    let mut out: Vec<VertexId> = m.iter().map(|&v| kept[v]).collect();
    out.sort_unstable();
    out
}

fn lowered(kept: &[VertexId], m: &[VertexId]) -> Option<Vec<VertexId>> {
    m.iter().map(|v| kept.iter().position(|k| k == v)).collect()
}

#[test]
fn deletion_stability_of_independent_modules() {
    let mut checked = 0;
    for seed in 0..300u64 {
        let mut r = rng(seed);
        let n = r.gen_range(12..=30);
        let g = random_interval_graph(n, seed, r.gen_range(0.05..0.25));
        let s = r.gen_range(0..n);
        let (gs, kept) = g.remove_vertices(&[s]);
        let (lt, lts) = (labeled(&g).unwrap(), labeled(&gs).unwrap());

        let fam = greedy_family(&gs, &complete_modules(&gs, &lts), true);
        let survive = fam.iter().filter(|m| is_complete_module(&g, &lifted(&kept, &m.vertices)).unwrap()).count();
        assert!(survive + 4 >= fam.len(), "seed {seed}: {survive} of {}", fam.len());

        let fam = greedy_family(&g, &complete_modules(&g, &lt), true);
        let survive = fam
            .iter()
            .filter(|m| lowered(&kept, &m.vertices).is_some_and(|low| is_complete_module(&gs, &low).unwrap()))
            .count();
        assert!(survive + 4 >= fam.len(), "seed {seed}: {survive} of {}", fam.len());
        checked += fam.len();
    }
    assert!(checked > 1000);
}

#[test]
fn deletion_stability_of_short_modules() {
    for seed in 0..300u64 {
        let mut r = rng(seed ^ 0xabc);
        let n = r.gen_range(12..=30);
        let h = r.gen_range(0..=3);
        let g = random_interval_graph(n, seed, r.gen_range(0.05..0.4));
        let s = r.gen_range(0..n);
        let (gs, kept) = g.remove_vertices(&[s]);
        let (lt, lts) = (labeled(&g).unwrap(), labeled(&gs).unwrap());
        let in_g: Vec<CompleteModule> = h_short_complete_modules(&g, &lt, h);
        let in_gs: Vec<CompleteModule> = h_short_complete_modules(&gs, &lts, h);

        let fam = greedy_family(&gs, &in_gs, false);
        let survive = fam.iter().filter(|m| sets(&in_g).contains(&lifted(&kept, &m.vertices))).count();
        assert!(survive + 3 * h + 5 >= fam.len(), "seed {seed}: {survive} of {}", fam.len());

        let fam = greedy_family(&g, &in_g, false);
        let survive = fam
            .iter()
            .filter(|m| lowered(&kept, &m.vertices).is_some_and(|low| sets(&in_gs).contains(&low)))
            .count();
        assert!(survive + 4 * h + 3 >= fam.len(), "seed {seed}: {survive} of {}", fam.len());
    }
}

#[test]
fn long_clique_modules_have_large_neighbourhoods() {
    let mut long = 0;
    for seed in 0..400u64 {
        let g = random_interval_graph(16, seed, 0.5);
        let lt = labeled(&g).unwrap();
        for m in complete_modules(&g, &lt) {
            if !g.is_clique(&m.vertices) {
                continue;
            }
            for h in 1..=3 {
                if !m.is_short(h) {
                    long += 1;
                    assert!(g.set_neighborhood(&m.vertices).len() >= 2 * (h + 1));
                }
            }
        }
    }
    assert!(long > 0);
}

#[test]
fn few_short_modules_touch_a_short_module() {
    for seed in 0..300u64 {
        let g = random_interval_graph(16, seed, 0.45);
        let lt = labeled(&g).unwrap();
        for h in 0..=3 {
            let short = h_short_complete_modules(&g, &lt, h);
            for k in &short {
                let touching = short
                    .iter()
                    .filter(|o| o.vertices != k.vertices && !independent(&g, &o.vertices, &k.vertices))
                    .count();
                assert!(touching <= 2 * h, "seed {seed}, h {h}");
            }
        }
    }
}
