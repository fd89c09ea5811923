//! Boolean renaming of count constraints and 2-SAT.
//!
//! Renaming a constraint swaps every literal of its set for the negated
//! literal and reverses its count function, which leaves the objective
//! untouched. An instance whose family becomes cross-free after renaming
//! some constraints is solved by the cross-free flow solver.

use thiserror::Error;

use crate::cfc::{check_convexity, check_family, solve_cfc, BitSet, CfcError, FamilyKind, Universe};
use crate::cost::Cost;
use crate::model::{AssignmentSet, CountFunction, CountInstance, ModelError};
use crate::solution::SolveResult;

pub mod twosat;

use twosat::{Lit, TwoSat};

#[derive(Debug, Error)]
pub enum RenamingError {
    #[error("variable {var} has {size} values; renaming needs Boolean domains")]
    NotBoolean { var: usize, size: usize },
    #[error("count function of set {set} is not convex at count {index}")]
    NonConvex { set: usize, index: usize },
    #[error("instance is not renamable cross-free: {0}")]
    NotRenamable(String),
    #[error("internal check failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Cfc(#[from] CfcError),
}

fn require_boolean(inst: &CountInstance) -> Result<(), RenamingError> {
    match inst.variables().iter().enumerate().find(|(_, v)| v.domain.len() != 2) {
        Some((var, v)) => Err(RenamingError::NotBoolean { var, size: v.domain.len() }),
        None => Ok(()),
    }
}

/// The renamed constraint: literals negated, `g'(z) = g(m − z)` with
/// `m = |A|`. Counts `m − z` outside the table are infinite; they are
/// unreachable whenever the set holds both literals of some variable.
pub fn rename_set(set: &AssignmentSet) -> Result<AssignmentSet, ModelError> {
    let m = set.len();
    let members: Vec<(usize, usize)> = set.members().iter().map(|&(v, b)| (v, 1 - b)).collect();
    let g: Vec<Cost> = (0..=set.s()).map(|z| m.checked_sub(z).map_or(Cost::INF, |k| set.g().at(k))).collect();
    AssignmentSet::new(members, CountFunction::new(g)?)
}

/// Outcome of the renamability test.
#[derive(Debug, Clone, PartialEq)]
pub enum Renamability {
    Renamable { renamed: Vec<bool>, instance: CountInstance },
    NotRenamable { reason: String },
}

fn negated(u: &Universe, s: &BitSet) -> BitSet {
    BitSet::from_ids(
        u.size(),
        s.ids().map(|k| {
            let (v, b) = u.pair(k);
            u.id(v, 1 - b)
        }),
    )
}

/// Overlapping, neither containing the other, and not covering everything.
fn incompletely_overlap(a: &BitSet, b: &BitSet) -> bool {
    !a.is_disjoint(b) && !a.is_subset(b) && !b.is_subset(a) && !a.covers_with(b)
}

/// Builds the renaming 2-SAT over one flag per constraint: a crossing
/// pair must disagree, a pair that would cross after renaming one of them
/// must agree.
pub fn renaming_clauses(inst: &CountInstance) -> TwoSat {
    let u = Universe::of(inst);
    let sets: Vec<BitSet> = inst.sets().iter().map(|s| u.set(s)).collect();
    let neg: Vec<BitSet> = sets.iter().map(|s| negated(&u, s)).collect();
    let r = sets.len();
    let mut sat = TwoSat::new(r);
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            if i < j && incompletely_overlap(&sets[i], &sets[j]) {
                sat.add_xor(Lit::pos(i), Lit::pos(j));
            }
            if incompletely_overlap(&neg[i], &sets[j]) {
                sat.add_equiv(Lit::pos(i), Lit::pos(j));
            }
        }
    }
    sat
}

/// Lexicographically smallest model (false before true), so instances that
/// are already cross-free keep every constraint as is.
fn smallest_model(sat: &TwoSat) -> Option<Vec<bool>> {
    let mut fixed = sat.clone();
    fixed.solve()?;
    for v in 0..sat.vars() {
        let mut trial = fixed.clone();
        trial.add_clause(Lit::neg(v), Lit::neg(v));
        if trial.solve().is_some() {
            fixed = trial;
        } else {
            fixed.add_clause(Lit::pos(v), Lit::pos(v));
        }
    }
    fixed.solve()
}

/// Finds constraints whose renaming makes the family cross-free.
pub fn recognize_renamable(inst: &CountInstance) -> Result<Renamability, RenamingError> {
    require_boolean(inst)?;
    for (k, s) in inst.sets().iter().enumerate() {
        if let Some(index) = check_convexity(s.g()).violation {
            return Err(RenamingError::NonConvex { set: k, index });
        }
    }
    let Some(renamed) = smallest_model(&renaming_clauses(inst)) else {
        return Ok(Renamability::NotRenamable { reason: "renaming clauses are unsatisfiable".into() });
    };
    let sets = inst
        .sets()
        .iter()
        .zip(&renamed)
        .map(|(s, &flip)| if flip { rename_set(s) } else { Ok(s.clone()) })
        .collect::<Result<Vec<_>, _>>()?;
    let instance = CountInstance::new(inst.variables().to_vec(), sets, inst.constant())?;
    let u = Universe::of(&instance);
    let report = check_family(&instance.sets().iter().map(|s| u.set(s)).collect::<Vec<_>>());
    if report.kind == FamilyKind::Neither {
        let (a, b) = report.witness.expect("witness");
        return Ok(Renamability::NotRenamable { reason: format!("renamed sets {a} and {b} still cross") });
    }
    Ok(Renamability::Renamable { renamed, instance })
}

/// Renames, solves the cross-free result and re-evaluates the assignment
/// on the original instance.
pub fn solve_renamable(inst: &CountInstance) -> Result<SolveResult, RenamingError> {
    let (renamed, instance) = match recognize_renamable(inst)? {
        Renamability::Renamable { renamed, instance } => (renamed, instance),
        Renamability::NotRenamable { reason } => return Err(RenamingError::NotRenamable(reason)),
    };
    let inner = solve_cfc(&instance)?;
    let actual = inst.evaluate(&inner.assignment)?;
    if actual != inner.cost {
        return Err(RenamingError::Invariant(format!("renamed optimum {} re-evaluates to {actual}", inner.cost)));
    }
    let mut r = SolveResult::new("renamed-cfc", inner.assignment, actual).note("renaming", renamed);
    for (k, v) in inner.certificate {
        r = r.note(&k, v);
    }
    Ok(r)
}
