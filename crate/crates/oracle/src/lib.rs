//! Exhaustive reference solvers and seeded generators used to check the fast
//! algorithms at small sizes.

use graph_core::{Interval, IntervalGraph, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Largest graph the bijection search accepts.
pub const BRUTE_ISO_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance too large for exhaustive search: {size} > {limit}")]
    TooLarge { size: usize, limit: usize },
}

/// Maps every vertex of `g1` to a vertex of `g2` preserving adjacency both
/// ways, or `None` when the graphs are not isomorphic.
pub fn brute_force_iso(g1: &IntervalGraph, g2: &IntervalGraph) -> Result<Option<Vec<VertexId>>, OracleError> {
    for g in [g1, g2] {
        if g.n() > BRUTE_ISO_LIMIT {
            return Err(OracleError::TooLarge { size: g.n(), limit: BRUTE_ISO_LIMIT });
        }
    }
    if g1.n() != g2.n() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let mut d1: Vec<usize> = (0..g1.n()).map(|v| g1.degree(v)).collect();
    let mut d2: Vec<usize> = (0..g2.n()).map(|v| g2.degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    let mut order: Vec<VertexId> = (0..g1.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g1.degree(v)), v));
    let mut map = vec![usize::MAX; g1.n()];
    let mut used = vec![false; g2.n()];
    if extend_bijection(g1, g2, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn extend_bijection(
    g1: &IntervalGraph,
    g2: &IntervalGraph,
    order: &[VertexId],
    depth: usize,
    map: &mut [VertexId],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    for v in 0..g2.n() {
        if used[v] || g2.degree(v) != g1.degree(u) {
            continue;
        }
        let consistent = order[..depth].iter().all(|&w| g1.has_edge(u, w) == g2.has_edge(v, map[w]));
        if !consistent {
            continue;
        }
        map[u] = v;
        used[v] = true;
        if extend_bijection(g1, g2, order, depth + 1, map, used) {
            return true;
        }
        used[v] = false;
    }
    map[u] = usize::MAX;
    false
}

/// Tries every deletion set of size `|V(g)| - |V(gprime)|` in lexicographic
/// order and returns the first one leaving a graph isomorphic to `gprime`.
pub fn brute_force_clean(
    gprime: &IntervalGraph,
    g: &IntervalGraph,
    limit_n: usize,
) -> Result<Option<Vec<VertexId>>, OracleError> {
    if g.n() > limit_n {
        return Err(OracleError::TooLarge { size: g.n(), limit: limit_n });
    }
    if gprime.n() > g.n() {
        return Ok(None);
    }
    let k = g.n() - gprime.n();
    let mut subset: Vec<VertexId> = (0..k).collect();
    loop {
        let (rest, _) = g.remove_vertices(&subset);
        if brute_force_iso(gprime, &rest)?.is_some() {
            return Ok(Some(subset));
        }
        if !next_subset(&mut subset, g.n()) {
            return Ok(None);
        }
    }
}

fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }
    fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| 64 * i + b))
    }
}

/// Finds an injective map of `h` into `g` whose image induces a copy of `h`.
/// Exhaustive backtracking with forward checking; exponential in the worst
/// case but fast on the structured instances used in the tests.
pub fn induced_embedding(h: &IntervalGraph, g: &IntervalGraph) -> Option<Vec<VertexId>> {
    if h.n() > g.n() {
        return None;
    }
    let gn = g.n();
    let nbr: Vec<Bits> = (0..gn)
        .map(|v| {
            let mut b = Bits::empty(gn);
            for &u in g.neighbors(v) {
                b.insert(u);
            }
            b
        })
        .collect();
    let domains: Vec<Bits> = (0..h.n())
        .map(|u| {
            let mut b = Bits::empty(gn);
            for v in (0..gn).filter(|&v| g.degree(v) >= h.degree(u)) {
                b.insert(v);
            }
            b
        })
        .collect();
    let mut assign = vec![None; h.n()];
    if embed_step(h, &nbr, gn, domains, &mut assign) {
        Some(assign.into_iter().map(|v| v.expect("complete assignment")).collect())
    } else {
        None
    }
}

fn embed_step(h: &IntervalGraph, nbr: &[Bits], gn: usize, domains: Vec<Bits>, assign: &mut [Option<usize>]) -> bool {
    let pick = (0..h.n()).filter(|&u| assign[u].is_none()).min_by_key(|&u| domains[u].count());
    let Some(u) = pick else {
        return true;
    };
    let candidates: Vec<usize> = domains[u].members().collect();
    for v in candidates {
        let mut single = Bits::empty(gn);
        single.insert(v);
        let mut next = domains.clone();
        let mut dead = false;
        for w in (0..h.n()).filter(|&w| w != u && assign[w].is_none()) {
            next[w] = if h.has_edge(u, w) { next[w].and(&nbr[v]) } else { next[w].and_not(&nbr[v]) };
            next[w] = next[w].and_not(&single);
            if next[w].count() == 0 {
                dead = true;
                break;
            }
        }
        if dead {
            continue;
        }
        assign[u] = Some(v);
        if embed_step(h, nbr, gn, next, assign) {
            return true;
        }
        assign[u] = None;
    }
    false
}

/// Brute-force check for a clique on `k` vertices.
pub fn has_clique(g: &IntervalGraph, k: usize) -> bool {
    fn grow(g: &IntervalGraph, chosen: &mut Vec<usize>, from: usize, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        for v in from..g.n() {
            if chosen.iter().all(|&u| g.has_edge(u, v)) {
                chosen.push(v);
                if grow(g, chosen, v + 1, k) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    grow(g, &mut Vec::new(), 0, k)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` intervals over `[0, 4n]` with lengths uniform in `[1, knob * n]`.
pub fn random_interval_model(n: usize, seed: u64, knob: f64) -> Vec<Interval> {
    let mut rng = rng(seed);
    let span = 4 * n as i64;
    let max_len = ((knob * n as f64).round() as i64).clamp(1, span.max(1));
    (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            let left = rng.gen_range(0..=(span - len).max(0));
            Interval::new(left, left + len)
        })
        .collect()
}

pub fn random_interval_graph(n: usize, seed: u64, knob: f64) -> IntervalGraph {
    IntervalGraph::from_intervals(random_interval_model(n, seed, knob)).expect("generated intervals are well formed")
}

/// Intervals with left ends advancing by 0 to 2 and lengths in
/// `[1, max_len]`, a quarter of them stretched up to `3 * max_len`. Mostly
/// connected, with Q-node roots; vertex ids are shuffled.
pub fn random_chain_interval_graph(n: usize, seed: u64, max_len: i64) -> IntervalGraph {
    let mut rng = rng(seed);
    let max_len = max_len.max(1);
    let mut left = 0i64;
    let mut model: Vec<Interval> = (0..n)
        .map(|_| {
            left += rng.gen_range(0..=2);
            let len = if rng.gen_bool(0.25) { rng.gen_range(1..=3 * max_len) } else { rng.gen_range(1..=max_len) };
            Interval::new(left, left + len)
        })
        .collect();
    model.shuffle(&mut rng);
    IntervalGraph::from_intervals(model).expect("generated intervals are well formed")
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_simple_graph(n: usize, p: f64, seed: u64) -> IntervalGraph {
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    IntervalGraph::from_edges(n, &edges).expect("ids in range")
}

#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub gprime: IntervalGraph,
    pub g: IntervalGraph,
    /// Deleting these vertices of `g` leaves a copy of `gprime`.
    pub planted: Vec<VertexId>,
    pub seed: u64,
}

/// Random interval graph `g`, a random `k`-subset removed, and the rest
/// shuffled into `gprime`.
pub fn plant_instance(n: usize, k: usize, seed: u64, knob: f64) -> PlantedInstance {
    assert!(k <= n, "cannot delete more vertices than exist");
    let g = random_interval_graph(n, seed, knob);
    let mut rng = rng(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut all: Vec<VertexId> = (0..n).collect();
    all.shuffle(&mut rng);
    let mut planted = all[..k].to_vec();
    planted.sort_unstable();
    let (rest, _) = g.remove_vertices(&planted);
    let mut perm: Vec<VertexId> = (0..rest.n()).collect();
    perm.shuffle(&mut rng);
    PlantedInstance { gprime: rest.relabel(&perm), g, planted, seed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> IntervalGraph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        IntervalGraph::from_edges(n, &edges).unwrap()
    }

    fn star3() -> IntervalGraph {
        IntervalGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn iso_examples() {
        assert_eq!(brute_force_iso(&path(4), &path(4)).unwrap(), Some(vec![0, 1, 2, 3]));
        assert_eq!(brute_force_iso(&path(4), &star3()).unwrap(), None);
        let big = IntervalGraph::empty(BRUTE_ISO_LIMIT + 1);
        assert!(brute_force_iso(&big, &big).is_err());
    }

    #[test]
    fn clean_examples() {
        assert_eq!(brute_force_clean(&path(4), &path(5), 10).unwrap(), Some(vec![0]));
        assert_eq!(brute_force_clean(&path(2), &path(3), 10).unwrap(), Some(vec![0]));
        let k3 = IntervalGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(brute_force_clean(&k3, &path(4), 10).unwrap(), None);
        assert!(brute_force_clean(&k3, &path(4), 3).is_err());
    }

    #[test]
    fn subsets_are_enumerated_in_order() {
        let mut s = vec![0, 1];
        let mut all = vec![s.clone()];
        while next_subset(&mut s, 4) {
            all.push(s.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn embedding_agrees_with_cleaning_oracle() {
        for seed in 0..40 {
            let g = random_interval_graph(8, seed, 0.6);
            let h = random_interval_graph(5, seed + 1000, 0.6);
            let by_subsets = brute_force_clean(&h, &g, 10).unwrap().is_some();
            let embedding = induced_embedding(&h, &g);
            assert_eq!(by_subsets, embedding.is_some(), "seed {seed}");
            if let Some(map) = embedding {
                for u in 0..h.n() {
                    for w in u + 1..h.n() {
                        assert_eq!(h.has_edge(u, w), g.has_edge(map[u], map[w]));
                    }
                }
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_interval_graph(9, 7, 0.5), random_interval_graph(9, 7, 0.5));
        assert_eq!(random_interval_graph(1, 3, 0.5).n(), 1);
        let p = plant_instance(8, 2, 11, 0.5);
        let (rest, _) = p.g.remove_vertices(&p.planted);
        assert!(brute_force_iso(&p.gprime, &rest).unwrap().is_some());
        let same = plant_instance(8, 0, 5, 0.5);
        assert!(brute_force_iso(&same.gprime, &same.g).unwrap().is_some());
    }

    #[test]
    fn clique_check() {
        assert!(has_clique(&path(3), 2));
        assert!(!has_clique(&path(3), 3));
    }
}
