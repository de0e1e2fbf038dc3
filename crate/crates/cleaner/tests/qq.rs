use cleaner::{
    interval_cleaning, qq_case, qq_check_reduced, AOutcome, AnnotatedFragmentation, BranchResult, CleanOptions,
    CleaningInstance, QqView,
};
use graph_core::{Interval, IntervalGraph, VertexId};
use oracle::{random_chain_interval_graph, random_interval_graph};
use pqtree::{are_isomorphic, labeled};

fn path(n: usize) -> IntervalGraph {
    IntervalGraph::from_edges(n, &(1..n).map(|i| (i - 1, i)).collect::<Vec<_>>()).unwrap()
}

fn model_of(g: &IntervalGraph) -> Vec<Interval> {
    labeled(g).unwrap().interval_model()
}

/// `g` with a twin of `x` appended as the last vertex.
fn with_twin(g: &IntervalGraph, x: VertexId) -> IntervalGraph {
    let mut model = model_of(g);
    model.push(model[x]);
    IntervalGraph::from_intervals(model).unwrap()
}

fn mirrored(g: &IntervalGraph) -> IntervalGraph {
    IntervalGraph::from_intervals(model_of(g).iter().map(Interval::mirrored).collect()).unwrap()
}

/// Chain graphs whose PQ-tree root is a Q-node with a non-empty child.
fn q_rooted(count: usize) -> Vec<(IntervalGraph, QqView)> {
    (0..)
        .filter_map(|seed| {
            let g = random_chain_interval_graph(10, seed, 3);
            let inst = CleaningInstance::new(g.clone(), g.clone()).unwrap();
            let view = QqView::new(&inst).unwrap()?;
            (1..=view.g.m).any(|i| !view.g.children[i].is_empty()).then_some((g, view))
        })
        .take(count)
        .collect()
}

#[test]
fn twin_inside_a_child_reduces_to_that_child() {
    for (gp, view) in q_rooted(30) {
        let i = (1..=view.g.m).find(|&i| !view.g.children[i].is_empty()).unwrap();
        let x = view.g.children[i][0];
        for g in [with_twin(&gp, x), with_twin(&mirrored(&gp), x)] {
            let inst = CleaningInstance::new(gp.clone(), g.clone()).unwrap();
            let Some(AOutcome::ReducedInput(sub)) = qq_check_reduced(&inst).unwrap() else {
                panic!("single differing child must reduce")
            };
            assert_eq!(sub.instance.k, 1);
            assert!(sub.vertex_map.contains(&x) && sub.vertex_map.contains(&gp.n()));
            let sol = interval_cleaning(&sub.instance, &CleanOptions::default()).unwrap().unwrap();
            let lifted: Vec<VertexId> = sol.deleted.iter().map(|&v| sub.vertex_map[v]).collect();
            let (rest, _) = g.remove_vertices(&lifted);
            assert!(are_isomorphic(&rest, &gp).unwrap());
        }
    }
}

#[test]
fn extra_root_twin_gives_singleton() {
    for (gp, view) in q_rooted(30) {
        let Some((x, _)) = view.g.root_vertices().next() else { continue };
        let g = with_twin(&gp, x);
        let inst = CleaningInstance::new(gp.clone(), g).unwrap();
        assert!(qq_check_reduced(&inst).unwrap().is_none());
        let AOutcome::Branches(bs) = qq_case(&inst, &CleanOptions::default()).unwrap() else { panic!("branches") };
        let singles: Vec<&Vec<VertexId>> = bs
            .iter()
            .filter_map(|b| match b {
                BranchResult::NecessarySet(s) if s.len() == 1 => Some(s),
                _ => None,
            })
            .collect();
        assert!(singles.iter().any(|s| s[0] == x || s[0] == gp.n()));
    }
}

#[test]
fn shorter_host_root_is_rejected() {
    let mut seen = 0;
    for seed in 0..300u64 {
        let g = random_chain_interval_graph(9, seed, 4);
        let gp = random_chain_interval_graph(7, seed + 1000, 2);
        let inst = CleaningInstance::new(gp, g).unwrap();
        let Some(view) = QqView::new(&inst).unwrap() else { continue };
        if view.g.m >= view.gp.m || qq_check_reduced(&inst).unwrap().is_some() {
            continue;
        }
        seen += 1;
        let AOutcome::Branches(bs) = qq_case(&inst, &CleanOptions::default()).unwrap() else { panic!("branches") };
        assert_eq!(bs.len(), 3);
        assert!(matches!(bs[1], BranchResult::Reject) && matches!(bs[2], BranchResult::Reject));
    }
    assert!(seen > 5);
}

#[test]
fn paths_go_through_fragmentation() {
    let inst = CleaningInstance::new(path(4), path(5)).unwrap();
    let view = QqView::new(&inst).unwrap().unwrap();
    assert_eq!((view.g.m, view.gp.m), (4, 3));
    let (opts, tracer) = CleanOptions::traced();
    let out = qq_case(&inst, &opts).unwrap();
    assert!(tracer.count("state") > 0);
    assert!(tracer.violations().is_empty());
    match out {
        AOutcome::Branches(bs) => {
            for b in bs {
                if let BranchResult::NecessarySet(s) = b {
                    assert!((1..=3).contains(&s.len()));
                }
            }
        }
        AOutcome::DirectSolution(s) => assert!(s.deleted == vec![0] || s.deleted == vec![4]),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn guesses_stay_in_window_and_are_few() {
    for seed in 0..200u64 {
        let k = 1 + (seed % 3) as usize;
        let g = random_chain_interval_graph(12, seed, 3);
        let gp = random_chain_interval_graph(12 - k, seed + 500, 3);
        let inst = CleaningInstance::new(gp, g).unwrap();
        let Some(view) = QqView::new(&inst).unwrap() else { continue };
        if view.g.m <= view.gp.m {
            continue;
        }
        let af = AnnotatedFragmentation::initial(view.gp.m, view.g.m);
        for j in 1..=view.gp.m {
            for reversed in [false, true] {
                let gs = view.branch_on_block(&af, j, k, reversed);
                assert!(gs.len() <= (k + 1) * (k + 1), "seed {seed}");
                for guess in gs {
                    let (a, b) = guess.block;
                    assert!(af.left(j) <= a && a <= b && b <= af.right(j));
                }
            }
        }
        let flat = AnnotatedFragmentation::initial(view.gp.m, view.gp.m);
        assert_eq!(view.measure(&flat, k, false), 0);
        for j in 1..=view.gp.m {
            let gs = view.branch_on_block(&flat, j, k, false);
            assert!(gs.len() <= 1);
            assert!(gs.iter().all(|g| g.block == (j, j)));
        }
    }
}

#[test]
fn random_pairs_never_break_invariants() {
    for seed in 0..100u64 {
        let g = random_interval_graph(11, seed, 0.5);
        let gp = random_interval_graph(9, seed + 3, 0.5);
        let inst = CleaningInstance::new(gp, g).unwrap();
        if QqView::new(&inst).unwrap().is_none() {
            continue;
        }
        let (opts, tracer) = CleanOptions::traced();
        let _ = qq_case(&inst, &opts).unwrap();
        assert!(tracer.violations().is_empty(), "seed {seed}: {:?}", tracer.violations());
    }
}
