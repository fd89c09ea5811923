//! Exhaustive ground truth. Evaluation here is written from scratch on the
//! raw tables so that it shares nothing with the solvers it checks.

use thiserror::Error;

use crate::cost::Cost;
use crate::model::{BinaryInstance, CountInstance};
use crate::solution::SolveResult;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("search space of {space} assignments exceeds the budget of {budget}")]
pub struct BudgetExceeded {
    pub space: u64,
    pub budget: u64,
}

/// Number of assignments, saturating at `u64::MAX`.
pub fn search_space(sizes: &[usize]) -> u64 {
    sizes.iter().fold(1u64, |acc, &d| acc.saturating_mul(d as u64))
}

/// Visits every assignment in lexicographic order.
fn for_each_assignment(sizes: &[usize], mut f: impl FnMut(&[usize])) {
    if sizes.iter().any(|&d| d == 0) {
        return;
    }
    let mut x = vec![0; sizes.len()];
    loop {
        f(&x);
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            x[pos] += 1;
            if x[pos] < sizes[pos] {
                break;
            }
            x[pos] = 0;
        }
    }
}

fn binary_cost(inst: &BinaryInstance, x: &[usize]) -> Cost {
    let mut total = Cost::ZERO;
    for (i, &a) in x.iter().enumerate() {
        if let Some(t) = inst.unary_table(i) {
            total = total.checked_add(t[a]).expect("cost overflow in oracle");
        }
    }
    for (i, j, t) in inst.binary_tables() {
        total = total.checked_add(t.row(x[i])[x[j]]).expect("cost overflow in oracle");
    }
    total
}

fn count_cost(inst: &CountInstance, x: &[usize]) -> Cost {
    let mut total = inst.constant();
    for set in inst.sets() {
        let hits = set.members().iter().filter(|&&(v, a)| x[v] == a).count();
        let g = set.g().values();
        let c = if hits < g.len() { g[hits] } else { Cost::INF };
        total = total.checked_add(c).expect("cost overflow in oracle");
    }
    total
}

fn minimise(sizes: &[usize], budget: u64, mut f: impl FnMut(&[usize]) -> Cost) -> Result<(Vec<usize>, Cost), BudgetExceeded> {
    let space = search_space(sizes);
    if space > budget {
        return Err(BudgetExceeded { space, budget });
    }
    let mut best: Option<(Vec<usize>, Cost)> = None;
    for_each_assignment(sizes, |x| {
        let c = f(x);
        if best.as_ref().map_or(true, |(_, b)| c < *b) {
            best = Some((x.to_vec(), c));
        }
    });
    Ok(best.unwrap_or((Vec::new(), Cost::ZERO)))
}

/// Optimum of a binary instance; ties go to the lexicographically smallest
/// assignment.
pub fn oracle_binary(inst: &BinaryInstance, budget: u64) -> Result<SolveResult, BudgetExceeded> {
    let (x, c) = minimise(&inst.domain_sizes(), budget, |x| binary_cost(inst, x))?;
    Ok(SolveResult::new("oracle", x, c))
}

/// Optimum of a count instance; same tie rule.
pub fn oracle_count(inst: &CountInstance, budget: u64) -> Result<SolveResult, BudgetExceeded> {
    let (x, c) = minimise(&inst.domain_sizes(), budget, |x| count_cost(inst, x))?;
    Ok(SolveResult::new("oracle", x, c))
}

/// Objective of a binary instance, computed independently of the model.
pub fn oracle_evaluate_binary(inst: &BinaryInstance, x: &[usize]) -> Cost {
    binary_cost(inst, x)
}

/// Objective of a count instance, computed independently of the model.
pub fn oracle_evaluate_count(inst: &CountInstance, x: &[usize]) -> Cost {
    count_cost(inst, x)
}

/// Every assignment with its objective, for pointwise comparisons.
pub fn all_count_values(inst: &CountInstance) -> Vec<(Vec<usize>, Cost)> {
    let mut out = Vec::new();
    for_each_assignment(&inst.domain_sizes(), |x| out.push((x.to_vec(), count_cost(inst, x))));
    out
}
