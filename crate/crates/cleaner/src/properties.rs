//! The ten per-index properties of an annotated fragmentation, evaluated in
//! one orientation. Every index is expected to map onto the left end of its
//! window; a property failing at `j` is what the search branches on.

use crate::fragment::AnnotatedFragmentation;
use crate::root::RootView;
use graph_core::VertexId;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Class {
    Left,
    Right,
    Cross,
}

/// Root vertices of `G'` running from one non-trivial fragment into a
/// later one, split by where their partner in `G` starts.
#[derive(Debug, Default)]
pub(crate) struct PairData {
    /// `(start, end)` of every vertex classed `Left` / `Right`.
    pub left: Vec<(usize, usize)>,
    pub right: Vec<(usize, usize)>,
}

impl PairData {
    fn first_end(list: &[(usize, usize)], y: usize) -> Option<usize> {
        list.iter().filter(|&&(s, _)| s == y).map(|&(_, e)| e).min()
    }

    /// Conflicting `(y1, y2)` with the smallest index each one induces.
    pub fn conflicts(&self) -> Vec<(usize, usize, usize)> {
        let mut ys_r: Vec<usize> = self.right.iter().map(|&(s, _)| s).collect();
        let mut ys_l: Vec<usize> = self.left.iter().map(|&(s, _)| s).collect();
        ys_r.sort_unstable();
        ys_r.dedup();
        ys_l.sort_unstable();
        ys_l.dedup();
        let mut out = Vec::new();
        for &y1 in &ys_r {
            let j1 = Self::first_end(&self.right, y1).expect("present");
            for &y2 in ys_l.iter().filter(|&&y2| y2 >= y1) {
                let j2 = Self::first_end(&self.left, y2).expect("present");
                out.push((y1, y2, j1.max(j2)));
            }
        }
        out
    }

    pub fn left_max(&self) -> Option<usize> {
        self.left.iter().map(|&(s, _)| s).max()
    }

    pub fn right_min(&self) -> Option<usize> {
        self.right.iter().map(|&(s, _)| s).min()
    }

    pub fn lr_critical(&self) -> Option<usize> {
        let j_r = Self::first_end(&self.right, self.right_min()?)?;
        match self.left_max() {
            None => Some(j_r),
            Some(y) => Some(j_r.max(Self::first_end(&self.left, y).expect("present"))),
        }
    }
}

pub(crate) struct Eval<'a> {
    pub g: &'a RootView,
    pub gp: &'a RootView,
    pub af: &'a AnnotatedFragmentation,
    pub k: usize,
    pos: Vec<usize>,
    shift: Vec<usize>,
    slack: Vec<usize>,
    pub class: Vec<Option<Class>>,
    /// Keyed by the positions of the two fragments.
    pub pairs: BTreeMap<(usize, usize), PairData>,
}

impl<'a> Eval<'a> {
    pub fn new(g: &'a RootView, gp: &'a RootView, af: &'a AnnotatedFragmentation, k: usize) -> Self {
        let mp = gp.m;
        let (mut pos, mut shift, mut slack) = (vec![0; mp + 1], vec![0; mp + 1], vec![0; mp + 1]);
        for (p, f) in af.fragments.iter().enumerate() {
            for j in f.source.0..=f.source.1 {
                pos[j] = p;
                shift[j] = f.shift();
                slack[j] = f.slack();
            }
        }
        let mut ev =
            Eval { g, gp, af, k, pos, shift, slack, class: vec![None; gp.block.len()], pairs: BTreeMap::new() };
        ev.classify();
        ev
    }

    fn classify(&mut self) {
        for j in 1..=self.gp.m {
            if self.trivial(j) {
                continue;
            }
            let partners = &self.g.ends[self.left(j)];
            for (rank, &v) in self.gp.ends[j].iter().enumerate() {
                let y = self.gp.block[v].expect("root vertex").0;
                if self.trivial(y) || self.pos[y] == self.pos[j] {
                    continue;
                }
                let Some(&w) = partners.get(rank) else { continue };
                let start = self.g.block[w].expect("root vertex").0;
                let (lo, hi) = (self.left(y), self.right(y));
                let class = if start == lo {
                    Class::Left
                } else if start == hi {
                    Class::Right
                } else if lo < start && start < hi {
                    Class::Cross
                } else {
                    continue;
                };
                self.class[v] = Some(class);
                let entry = self.pairs.entry((self.pos[y], self.pos[j])).or_default();
                match class {
                    Class::Left => entry.left.push((y, j)),
                    Class::Right => entry.right.push((y, j)),
                    Class::Cross => {}
                }
            }
        }
    }

    pub fn left(&self, j: usize) -> usize {
        j + self.shift[j]
    }

    pub fn right(&self, j: usize) -> usize {
        j + self.shift[j] + self.slack[j]
    }

    pub fn trivial(&self, j: usize) -> bool {
        self.slack[j] == 0
    }

    fn start_pairs(&self, j: usize) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.gp.starts[j].iter().copied().zip(self.g.starts[self.left(j)].iter().copied())
    }

    fn end_pairs(&self, j: usize) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.gp.ends[j].iter().copied().zip(self.g.ends[self.left(j)].iter().copied())
    }

    /// Checks properties 5 (`exact = false`) and 9 (`exact = true`).
    fn partners_in_window(&self, j: usize, exact: bool) -> bool {
        let fits = |y: usize, at: usize| {
            if exact {
                at == self.left(y)
            } else {
                self.left(y) <= at && at <= self.right(y)
            }
        };
        let ok_plus = self.start_pairs(j).all(|(v, w)| {
            let y = self.gp.block[v].expect("root vertex").1;
            self.trivial(y) || fits(y, self.g.block[w].expect("root vertex").1)
        });
        ok_plus
            && self.end_pairs(j).all(|(v, w)| {
                let y = self.gp.block[v].expect("root vertex").0;
                self.trivial(y) || fits(y, self.g.block[w].expect("root vertex").0)
            })
    }

    pub fn holds(&self, ell: usize, j: usize) -> bool {
        let (gp, g, lj) = (self.gp, self.g, self.left(j));
        let (p_plus, p_minus) = (gp.starts[j].len(), gp.ends[j].len());
        let (g_plus, g_minus) = (g.starts[lj].len(), g.ends[lj].len());
        match ell {
            1 => gp.codes[j] == g.codes[lj],
            2 => p_plus <= g_plus && g_plus <= p_plus + self.k && p_minus <= g_minus && g_minus <= p_minus + self.k,
            _ if self.trivial(j) => true,
            3 => p_plus == g_plus && p_minus == g_minus,
            4 => self.label_mismatch_in_fragment(j).is_none(),
            5 => self.partners_in_window(j, false),
            6 => self.cross_ending_at(j).is_none(),
            7 => self.conflict_at(j).is_none(),
            8 => self.lr_critical_pair(j).is_none(),
            9 => self.partners_in_window(j, true),
            10 => self.important_mismatch(j).is_none(),
            _ => unreachable!("properties are numbered 1 to 10"),
        }
    }

    pub fn first_violation(&self, ell: usize) -> Option<usize> {
        (1..=self.gp.m).find(|&j| !self.holds(ell, j))
    }

    /// Every index of the fragment at `pos` satisfies property `ell`.
    pub fn fragment_holds(&self, pos: usize, ell: usize) -> bool {
        let f = self.af.fragments[pos];
        (f.source.0..=f.source.1).all(|j| self.holds(ell, j))
    }

    /// Sum over non-trivial fragments and properties 1 to 9 in this orientation.
    pub fn half_measure(&self) -> usize {
        let mut total = 0;
        for (pos, f) in self.af.fragments.iter().enumerate() {
            if f.is_trivial() {
                continue;
            }
            total += (1..=9).filter(|&ell| self.fragment_holds(pos, ell)).count();
        }
        total
    }

    /// First `y` before `j` in its fragment with a label count differing
    /// from the one at the left ends.
    pub fn label_mismatch_in_fragment(&self, j: usize) -> Option<usize> {
        let start = self.af.fragments[self.pos[j]].source.0;
        (start..j).find(|&y| self.gp.label_count(y, j) != self.g.label_count(self.left(y), self.left(j)))
    }

    /// Smallest start of a cross vertex ending at `j`.
    pub fn cross_ending_at(&self, j: usize) -> Option<usize> {
        self.gp.ends[j]
            .iter()
            .filter(|&&v| self.class[v] == Some(Class::Cross))
            .map(|&v| self.gp.block[v].expect("root vertex").0)
            .min()
    }

    /// A conflicting pair making `j` conflict-inducing, preferring one with
    /// distinct members.
    pub fn conflict_at(&self, j: usize) -> Option<(usize, usize)> {
        let h = self.pos[j];
        let mut best: Option<(usize, usize)> = None;
        for (_, data) in self.pairs.range((0, h)..).filter(|((_, hh), _)| *hh == h) {
            for (y1, y2, t) in data.conflicts() {
                if t <= j && (best.is_none() || y1 < y2) {
                    best = Some((y1, y2));
                    if y1 < y2 {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// The fragment pair for which `j` is LR-critical.
    pub fn lr_critical_pair(&self, j: usize) -> Option<(usize, usize)> {
        let h = self.pos[j];
        self.pairs.iter().find(|((_, hh), data)| *hh == h && data.lr_critical() == Some(j)).map(|(&key, _)| key)
    }

    /// First important index whose label count with `j` is off, with the
    /// two counts `(G', G)`.
    pub fn important_mismatch(&self, j: usize) -> Option<(usize, usize, usize)> {
        self.af.important.iter().find_map(|&u| {
            let (a, b) = if u > j { (j, u) } else { (u, j) };
            let (p, q) = (self.gp.label_count(a, b), self.g.label_count(self.left(a), self.left(b)));
            (p != q).then_some((u, p, q))
        })
    }
}
