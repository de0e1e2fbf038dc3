use serde::Serialize;
use std::collections::BTreeSet;

/// A block `source` of children of the `G'` root paired with a block
/// `target` of children of the `G` root that is at least as long.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fragment {
    pub source: (usize, usize),
    pub target: (usize, usize),
}

impl Fragment {
    pub fn new(source: (usize, usize), target: (usize, usize)) -> Self {
        Fragment { source, target }
    }

    pub fn shift(&self) -> usize {
        self.target.0 - self.source.0
    }

    pub fn slack(&self) -> usize {
        (self.target.1 - self.target.0) - (self.source.1 - self.source.0)
    }

    pub fn is_trivial(&self) -> bool {
        self.slack() == 0
    }

    pub fn contains(&self, j: usize) -> bool {
        self.source.0 <= j && j <= self.source.1
    }
}

/// Fragments in order, the important indices and the right-constrained ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnotatedFragmentation {
    pub fragments: Vec<Fragment>,
    pub important: BTreeSet<usize>,
    pub right_constrained: BTreeSet<usize>,
}

impl AnnotatedFragmentation {
    pub fn initial(m_source: usize, m_target: usize) -> Self {
        AnnotatedFragmentation {
            fragments: vec![Fragment::new((1, m_source), (1, m_target))],
            important: BTreeSet::new(),
            right_constrained: BTreeSet::new(),
        }
    }

    pub fn m_source(&self) -> usize {
        self.fragments.last().map_or(0, |f| f.source.1)
    }

    pub fn m_target(&self) -> usize {
        self.fragments.last().map_or(0, |f| f.target.1)
    }

    pub fn position(&self, j: usize) -> usize {
        self.fragments.partition_point(|f| f.source.1 < j)
    }

    pub fn fragment(&self, j: usize) -> &Fragment {
        &self.fragments[self.position(j)]
    }

    pub fn left(&self, j: usize) -> usize {
        j + self.fragment(j).shift()
    }

    pub fn right(&self, j: usize) -> usize {
        let f = self.fragment(j);
        j + f.shift() + f.slack()
    }

    pub fn is_trivial_index(&self, j: usize) -> bool {
        self.fragment(j).is_trivial()
    }

    /// Last index of a non-trivial fragment.
    pub fn is_fragment_end(&self, j: usize) -> bool {
        let f = self.fragment(j);
        !f.is_trivial() && f.source.1 == j
    }

    pub fn nontrivial_count(&self) -> usize {
        self.fragments.iter().filter(|f| !f.is_trivial()).count()
    }

    fn replace(&self, pos: usize, first: Fragment, second: Fragment) -> Self {
        let mut out = self.clone();
        out.fragments.splice(pos..=pos, [first, second]);
        out
    }

    /// Splits the fragment of `j` so that `j` starts a trivial fragment
    /// mapped onto its right end. `None` when `j` already starts its fragment.
    pub fn right_split(&self, j: usize) -> Option<Self> {
        let pos = self.position(j);
        let f = *self.fragments.get(pos)?;
        if j <= f.source.0 || j > f.source.1 {
            return None;
        }
        let r = self.right(j);
        Some(self.replace(
            pos,
            Fragment::new((f.source.0, j - 1), (f.target.0, r - 1)),
            Fragment::new((j, f.source.1), (r, f.target.1)),
        ))
    }

    /// Splits so that `j` starts a fragment whose target starts at `i`,
    /// strictly between the two ends available to `j`.
    pub fn skew_split(&self, j: usize, i: usize) -> Option<Self> {
        let pos = self.position(j);
        let f = *self.fragments.get(pos)?;
        if j <= f.source.0 || j > f.source.1 || i <= self.left(j) || i >= self.right(j) {
            return None;
        }
        Some(self.replace(
            pos,
            Fragment::new((f.source.0, j - 1), (f.target.0, i - 1)),
            Fragment::new((j, f.source.1), (i, f.target.1)),
        ))
    }

    pub fn mark_trivial_important(&mut self) {
        for f in &self.fragments {
            if f.is_trivial() {
                self.important.extend(f.source.0..=f.source.1);
            }
        }
    }

    /// The same fragmentation with both roots read backwards.
    pub fn reversed(&self) -> Self {
        let (ms, mt) = (self.m_source(), self.m_target());
        let flip = |x: usize, m: usize| m + 1 - x;
        AnnotatedFragmentation {
            fragments: self
                .fragments
                .iter()
                .rev()
                .map(|f| {
                    Fragment::new(
                        (flip(f.source.1, ms), flip(f.source.0, ms)),
                        (flip(f.target.1, mt), flip(f.target.0, mt)),
                    )
                })
                .collect(),
            important: self.important.iter().map(|&u| flip(u, ms)).collect(),
            right_constrained: self.right_constrained.iter().map(|&w| flip(w, ms)).collect(),
        }
    }

    /// Tiling, shift recurrence, important indices trivial, right-constrained
    /// indices last in their fragment.
    pub fn check(&self) -> Result<(), String> {
        let mut next = (1, 1);
        let mut shift = 0;
        for f in &self.fragments {
            if f.source.0 != next.0 || f.target.0 != next.1 {
                return Err(format!("fragment {f:?} does not continue the tiling"));
            }
            if f.source.1 < f.source.0 || f.target.1 - f.target.0 < f.source.1 - f.source.0 {
                return Err(format!("fragment {f:?} has negative slack"));
            }
            if f.shift() != shift {
                return Err(format!("fragment {f:?} breaks the shift recurrence"));
            }
            shift += f.slack();
            next = (f.source.1 + 1, f.target.1 + 1);
        }
        if let Some(u) = self.important.iter().find(|&&u| !self.is_trivial_index(u)) {
            return Err(format!("important index {u} is not trivial"));
        }
        if let Some(w) = self.right_constrained.iter().find(|&&w| self.fragment(w).source.1 != w) {
            return Err(format!("right-constrained index {w} is not last in its fragment"));
        }
        Ok(())
    }
}
