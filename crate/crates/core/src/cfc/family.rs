//! Set-family relations over the assignment universe and the convexity
//! test for count functions.

use crate::cost::Cost;
use crate::model::{AssignmentSet, CountFunction, CountInstance};

/// Fixed-width bit set over assignment ids `0..N`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn empty(universe: usize) -> BitSet {
        BitSet { words: vec![0; universe.div_ceil(64)], len: universe }
    }

    pub fn full(universe: usize) -> BitSet {
        let mut s = BitSet::empty(universe);
        for k in 0..universe {
            s.insert(k);
        }
        s
    }

    pub fn from_ids(universe: usize, ids: impl IntoIterator<Item = usize>) -> BitSet {
        let mut s = BitSet::empty(universe);
        for k in ids {
            s.insert(k);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, k: usize) {
        self.words[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, k: usize) -> bool {
        self.words[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Whether the union is the whole universe.
    pub fn covers_with(&self, other: &BitSet) -> bool {
        (0..self.len).all(|k| self.contains(k) || other.contains(k))
    }

    pub fn complement(&self) -> BitSet {
        BitSet::from_ids(self.len, (0..self.len).filter(|&k| !self.contains(k)))
    }

    pub fn ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&k| self.contains(k))
    }
}

/// Assignment ids follow the variable order: `offset[i] + a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    offsets: Vec<usize>,
    size: usize,
}

impl Universe {
    pub fn of(inst: &CountInstance) -> Universe {
        Universe { offsets: inst.assignment_offsets(), size: inst.universe_size() }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn id(&self, var: usize, value: usize) -> usize {
        self.offsets[var] + value
    }

    /// `(variable, value)` of an assignment id.
    pub fn pair(&self, id: usize) -> (usize, usize) {
        let var = self.offsets.partition_point(|&o| o <= id) - 1;
        (var, id - self.offsets[var])
    }

    pub fn set(&self, s: &AssignmentSet) -> BitSet {
        BitSet::from_ids(self.size, s.members().iter().map(|&(v, a)| self.id(v, a)))
    }

    pub fn members(&self, s: &BitSet) -> Vec<(usize, usize)> {
        s.ids().map(|k| self.pair(k)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Laminar,
    CrossFree,
    Neither,
}

impl FamilyKind {
    pub fn label(self) -> &'static str {
        match self {
            FamilyKind::Laminar => "LAMINAR",
            FamilyKind::CrossFree => "CROSS_FREE",
            FamilyKind::Neither => "NEITHER",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyReport {
    pub kind: FamilyKind,
    /// First pair (by index) that is not nested; for `Neither`, the first
    /// pair that is not even cross-free.
    pub witness: Option<(usize, usize)>,
}

fn nested(a: &BitSet, b: &BitSet) -> bool {
    a.is_subset(b) || b.is_subset(a) || a.is_disjoint(b)
}

/// Classifies a family of sets over a common universe.
pub fn check_family(sets: &[BitSet]) -> FamilyReport {
    let mut first_crossing = None;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            if nested(&sets[i], &sets[j]) {
                continue;
            }
            if !sets[i].covers_with(&sets[j]) {
                return FamilyReport { kind: FamilyKind::Neither, witness: Some((i, j)) };
            }
            first_crossing.get_or_insert((i, j));
        }
    }
    match first_crossing {
        None => FamilyReport { kind: FamilyKind::Laminar, witness: None },
        Some(w) => FamilyReport { kind: FamilyKind::CrossFree, witness: Some(w) },
    }
}

/// [`check_family`] on the sets of a count instance.
pub fn check_instance_family(inst: &CountInstance) -> FamilyReport {
    let u = Universe::of(inst);
    check_family(&inst.sets().iter().map(|s| u.set(s)).collect::<Vec<_>>())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvexityReport {
    pub convex: bool,
    /// Smallest `m` with `g(m+2) − g(m+1) < g(m+1) − g(m)`, or the first
    /// infinite count inside the finite range.
    pub violation: Option<usize>,
}

/// Convexity on the finite interval, checked as `g(m) + g(m+2) ≥ 2·g(m+1)`.
pub fn check_convexity(g: &CountFunction) -> ConvexityReport {
    convexity_of(g.values())
}

/// [`check_convexity`] on a raw table.
pub fn convexity_of(values: &[Cost]) -> ConvexityReport {
    let finite: Vec<usize> = (0..values.len()).filter(|&m| values[m].is_finite()).collect();
    let (Some(&l), Some(&u)) = (finite.first(), finite.last()) else {
        return ConvexityReport { convex: true, violation: None };
    };
    if let Some(m) = (l..=u).find(|&m| values[m].is_inf()) {
        return ConvexityReport { convex: false, violation: Some(m) };
    }
    for m in l..u.saturating_sub(1) {
        let outer = values[m].checked_add(values[m + 2]);
        let inner = values[m + 1].checked_mul_int(2);
        match (outer, inner) {
            (Ok(o), Ok(i)) if o >= i => {}
            _ => return ConvexityReport { convex: false, violation: Some(m) },
        }
    }
    ConvexityReport { convex: true, violation: None }
}
