//! Cross-free to laminar rewriting and the laminar forest.
//!
//! Every solution hits exactly `n` assignments of the universe, so a set
//! `A` and its complement satisfy `|x ∩ A| + |x ∩ Ā| = n`. A set larger
//! than half the universe can therefore be traded for its complement with
//! the reflected function `y ↦ g(n − y)`; afterwards no two sets cross.

use std::collections::HashMap;

use super::family::{check_family, BitSet, FamilyKind, Universe};
use super::CfcError;
use crate::cost::Cost;
use crate::model::{AssignmentSet, CountFunction, CountInstance};

struct Working {
    set: BitSet,
    g: Vec<Cost>,
    alive: bool,
}

fn distinct_vars(u: &Universe, s: &BitSet) -> usize {
    let mut vars: Vec<usize> = s.ids().map(|k| u.pair(k).0).collect();
    vars.dedup();
    vars.len()
}

/// Adds `y ↦ g(n − y)` to `into`, treating counts outside `g`'s table as
/// infinite.
fn fold(into: &mut [Cost], g: &[Cost], n: usize) -> Result<(), CfcError> {
    for (y, slot) in into.iter_mut().enumerate() {
        let reflected = n.checked_sub(y).and_then(|m| g.get(m).copied()).unwrap_or(Cost::INF);
        *slot = slot.checked_add(reflected)?;
    }
    Ok(())
}

/// Statistics of a laminarisation, for certificates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LaminarStats {
    pub folded_large: usize,
    pub added_complements: usize,
    pub folded_pairs: usize,
}

/// Cost-preserving rewrite of a cross-free instance into a laminar one.
/// Laminar inputs are returned unchanged.
pub fn crossfree_to_laminar(inst: &CountInstance) -> Result<CountInstance, CfcError> {
    crossfree_to_laminar_with_stats(inst).map(|(i, _)| i)
}

pub fn crossfree_to_laminar_with_stats(inst: &CountInstance) -> Result<(CountInstance, LaminarStats), CfcError> {
    let u = Universe::of(inst);
    let bits: Vec<BitSet> = inst.sets().iter().map(|s| u.set(s)).collect();
    let report = check_family(&bits);
    match report.kind {
        FamilyKind::Laminar => return Ok((inst.clone(), LaminarStats::default())),
        FamilyKind::Neither => {
            let (a, b) = report.witness.expect("witness");
            return Err(CfcError::NotCrossFree { a, b });
        }
        FamilyKind::CrossFree => {}
    }
    let n = inst.n();
    let half = u.size() / 2;
    let mut stats = LaminarStats::default();
    let mut constant = inst.constant();
    let mut work: Vec<Working> =
        bits.into_iter().zip(inst.sets()).map(|(set, s)| Working { set, g: s.g().values().to_vec(), alive: true }).collect();
    let mut index: HashMap<BitSet, usize> = work.iter().enumerate().map(|(k, w)| (w.set.clone(), k)).collect();

    let complement_slot = |work: &mut Vec<Working>, index: &mut HashMap<BitSet, usize>, comp: BitSet, stats: &mut LaminarStats| {
        if let Some(&k) = index.get(&comp) {
            return k;
        }
        let s = distinct_vars(&u, &comp);
        index.insert(comp.clone(), work.len());
        work.push(Working { set: comp, g: vec![Cost::ZERO; s + 1], alive: true });
        stats.added_complements += 1;
        work.len() - 1
    };

    // Sets above half the universe give way to their complements.
    let original = work.len();
    for k in 0..original {
        if work[k].set.count() <= half {
            continue;
        }
        let g = std::mem::take(&mut work[k].g);
        work[k].alive = false;
        stats.folded_large += 1;
        if work[k].set.count() == u.size() {
            // The whole universe is hit exactly n times.
            constant = constant.checked_add(g.get(n).copied().unwrap_or(Cost::INF))?;
            continue;
        }
        let comp = work[k].set.complement();
        let slot = complement_slot(&mut work, &mut index, comp, &mut stats);
        fold(&mut work[slot].g, &g, n)?;
    }
    // Remaining crossings are exact complementary halves.
    for k in 0..work.len() {
        if !work[k].alive {
            continue;
        }
        let comp = work[k].set.complement();
        if let Some(&j) = index.get(&comp) {
            if j > k && work[j].alive {
                let g = std::mem::take(&mut work[j].g);
                work[j].alive = false;
                fold(&mut work[k].g, &g, n)?;
                stats.folded_pairs += 1;
            }
        }
    }

    let mut sets = Vec::new();
    for w in work.into_iter().filter(|w| w.alive) {
        let g = CountFunction::new(w.g).map_err(|e| CfcError::Invariant(format!("folded function: {e}")))?;
        if let Some(index) = super::family::check_convexity(&g).violation {
            return Err(CfcError::Invariant(format!("folded function not convex at {index}")));
        }
        sets.push(AssignmentSet::new(u.members(&w.set), g)?);
    }
    let out = CountInstance::new(inst.variables().to_vec(), sets, constant)?;
    let check = check_family(&out.sets().iter().map(|s| u.set(s)).collect::<Vec<_>>());
    if check.kind != FamilyKind::Laminar {
        return Err(CfcError::Invariant(format!("rewritten family is {}", check.kind.label())));
    }
    Ok((out, stats))
}

/// Laminar family as a rooted forest under the universal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarForest {
    /// Instance set indices in insertion order (decreasing size, stable).
    pub order: Vec<usize>,
    /// Father of each instance set: `None` means the universal root.
    pub father: Vec<Option<usize>>,
    /// Smallest set containing each assignment id, `None` for the root.
    pub smallest: Vec<Option<usize>>,
    /// Instance set equal to the universe, if one is declared.
    pub root_set: Option<usize>,
}

impl LaminarForest {
    /// Number of forest nodes, root included.
    pub fn node_count(&self) -> usize {
        self.order.len() + usize::from(self.root_set.is_none())
    }
}

/// Builds the father relation by inserting sets in decreasing size order
/// while tracking the smallest set containing each assignment.
pub fn build_laminar_forest(inst: &CountInstance) -> Result<LaminarForest, CfcError> {
    let u = Universe::of(inst);
    let bits: Vec<BitSet> = inst.sets().iter().map(|s| u.set(s)).collect();
    let mut order: Vec<usize> = (0..bits.len()).collect();
    order.sort_by_key(|&k| std::cmp::Reverse(bits[k].count()));
    let mut smallest: Vec<Option<usize>> = vec![None; u.size()];
    let mut father = vec![None; bits.len()];
    let mut root_set = None;
    for &k in &order {
        if bits[k].count() == u.size() {
            root_set = Some(k);
            continue;
        }
        let mut ids = bits[k].ids();
        let first = ids.next().expect("non-empty set");
        let f = smallest[first];
        if let Some(other) = ids.find(|&m| smallest[m] != f) {
            let culprit = smallest[other].or(f).expect("some set differs");
            return Err(CfcError::NotLaminar { a: culprit, b: k });
        }
        father[k] = f.filter(|&p| Some(p) != root_set);
        for m in bits[k].ids() {
            smallest[m] = Some(k);
        }
    }
    Ok(LaminarForest { order, father, smallest, root_set })
}
