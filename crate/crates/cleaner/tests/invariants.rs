use cleaner::{interval_cleaning, necessary_set, AnnotatedFragmentation, CleanOptions, CleaningInstance};
use graph_core::IntervalGraph;
use oracle::{brute_force_clean, plant_instance, random_chain_interval_graph, BRUTE_ISO_LIMIT};
use pqtree::are_isomorphic;
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Op {
    Right(usize),
    Skew(usize, usize),
    Mark,
}

fn ops() -> impl Strategy<Value = Vec<Op>> {
    let op = prop_oneof![
        (1usize..20).prop_map(Op::Right),
        (1usize..20, 0usize..20).prop_map(|(j, i)| Op::Skew(j, i)),
        Just(Op::Mark),
    ];
    prop::collection::vec(op, 0..12)
}

proptest! {
    #[test]
    fn fragmentation_updates_keep_invariants(ms in 1usize..15, extra in 0usize..8, seq in ops()) {
        let mut af = AnnotatedFragmentation::initial(ms, ms + extra);
        for op in seq {
            let next = match op {
                Op::Right(j) => af.right_split(j),
                Op::Skew(j, i) => af.skew_split(j, i),
                Op::Mark => { af.mark_trivial_important(); Some(af.clone()) }
            };
            if let Some(n) = next { af = n; }
            prop_assert!(af.check().is_ok(), "{:?}", af.check());
            prop_assert_eq!(af.reversed().reversed(), af.clone());
            prop_assert!(af.reversed().check().is_ok());
            prop_assert_eq!(af.m_source(), ms);
            prop_assert_eq!(af.m_target(), ms + extra);
            let slack: usize = af.fragments.iter().map(|f| f.slack()).sum();
            prop_assert_eq!(slack, extra);
        }
    }

    #[test]
    fn planted_solutions_are_found_and_sound(n in 3usize..40, k in 1usize..4, seed in any::<u64>(), chain in any::<bool>()) {
        let k = k.min(n - 1);
        let (gp, g) = if chain {
            let g = random_chain_interval_graph(n, seed, 4);
            let p = plant_instance(n, k, seed, 0.5);
            let removed = p.planted;
            (g.remove_vertices(&removed).0, g)
        } else {
            let p = plant_instance(n, k, seed, 0.3);
            (p.gprime, p.g)
        };
        let inst = CleaningInstance::new(gp.clone(), g.clone()).unwrap();
        let sol = interval_cleaning(&inst, &CleanOptions::default()).unwrap();
        prop_assert!(sol.is_some());
        let sol = sol.unwrap();
        prop_assert_eq!(sol.deleted.len(), k);
        prop_assert!(are_isomorphic(&g.remove_vertices(&sol.deleted).0, &gp).unwrap());
    }

    #[test]
    fn necessary_sets_contain_a_good_vertex(n in 3usize..11, k in 1usize..4, seed in any::<u64>()) {
        let k = k.min(n - 1);
        let g = random_chain_interval_graph(n, seed, 3);
        let p = plant_instance(n, k, seed, 0.5);
        let gp = g.remove_vertices(&p.planted).0;
        let inst = CleaningInstance::new(gp.clone(), g.clone()).unwrap();
        let set = necessary_set(&inst, &CleanOptions::default()).unwrap();
        prop_assert!(!set.is_empty());
        let good = set.iter().any(|&s| {
            let (rest, _) = g.remove_vertices(&[s]);
            brute_force_clean(&gp, &rest, BRUTE_ISO_LIMIT).unwrap().is_some()
        });
        prop_assert!(good, "no vertex of {:?} extends to a solution", set);
    }

    #[test]
    fn parallel_search_agrees(n in 4usize..25, k in 1usize..4, seed in any::<u64>()) {
        let p = plant_instance(n, k.min(n - 1), seed, 0.4);
        let gp: IntervalGraph = if seed % 2 == 0 { p.gprime } else { random_chain_interval_graph(p.gprime.n(), seed, 3) };
        let inst = CleaningInstance::new(gp, p.g).unwrap();
        let one = interval_cleaning(&inst, &CleanOptions::default()).unwrap();
        let four = interval_cleaning(&inst, &CleanOptions { jobs: 4, tracer: None }).unwrap();
        prop_assert_eq!(one.is_some(), four.is_some());
    }
}
