//! Arc consistency (AC-3) and singleton arc consistency (SAC-1) over the
//! crisp binary tables of an instance. Unary tables are not consulted.

use std::collections::VecDeque;

use super::SolverError;
use crate::model::BinaryInstance;

/// Surviving values per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domains {
    pub alive: Vec<Vec<bool>>,
    /// First variable whose domain became empty, if any.
    pub wiped_out: Option<usize>,
}

impl Domains {
    pub fn full(inst: &BinaryInstance) -> Domains {
        Domains { alive: inst.domain_sizes().into_iter().map(|d| vec![true; d]).collect(), wiped_out: None }
    }

    pub fn values(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.alive[i].iter().enumerate().filter(|(_, &a)| a).map(|(b, _)| b)
    }

    pub fn size(&self, i: usize) -> usize {
        self.alive[i].iter().filter(|&&a| a).count()
    }

    pub fn removed(&self) -> usize {
        self.alive.iter().flatten().filter(|&&a| !a).count()
    }
}

pub(crate) fn require_crisp(inst: &BinaryInstance) -> Result<(), SolverError> {
    for (i, j, t) in inst.binary_tables() {
        for a in 0..t.rows() {
            for b in 0..t.cols() {
                let c = t.get(a, b);
                if !(c.is_zero() || c.is_inf()) {
                    return Err(SolverError::NotCrisp { i, j, a, b, cost: c });
                }
            }
        }
    }
    Ok(())
}

fn neighbours(inst: &BinaryInstance) -> Vec<Vec<usize>> {
    let mut nb = vec![Vec::new(); inst.n()];
    for (i, j, _) in inst.binary_tables() {
        nb[i].push(j);
        nb[j].push(i);
    }
    nb
}

/// Removes from `alive[i]` every value without a zero-cost support in `j`.
fn revise(inst: &BinaryInstance, alive: &mut [Vec<bool>], i: usize, j: usize) -> bool {
    let mut changed = false;
    for a in 0..alive[i].len() {
        if !alive[i][a] {
            continue;
        }
        let supported = (0..alive[j].len()).any(|b| alive[j][b] && inst.binary(i, a, j, b).is_zero());
        if !supported {
            alive[i][a] = false;
            changed = true;
        }
    }
    changed
}

fn propagate(inst: &BinaryInstance, nb: &[Vec<usize>], d: &mut Domains, seeds: &[usize]) {
    let mut queue: VecDeque<(usize, usize)> = VecDeque::new();
    let mut queued = vec![vec![false; inst.n()]; inst.n()];
    for &j in seeds {
        for &i in &nb[j] {
            if !queued[i][j] {
                queued[i][j] = true;
                queue.push_back((i, j));
            }
        }
    }
    while let Some((i, j)) = queue.pop_front() {
        queued[i][j] = false;
        if revise(inst, &mut d.alive, i, j) {
            if !d.alive[i].iter().any(|&a| a) {
                d.wiped_out = Some(i);
                return;
            }
            for &k in &nb[i] {
                if k != j && !queued[k][i] {
                    queued[k][i] = true;
                    queue.push_back((k, i));
                }
            }
        }
    }
}

fn enforce_ac(inst: &BinaryInstance, nb: &[Vec<usize>], d: &mut Domains) {
    let all: Vec<usize> = (0..inst.n()).collect();
    propagate(inst, nb, d, &all);
}

/// Arc consistency fixpoint from the full domains.
pub fn arc_consistency(inst: &BinaryInstance) -> Result<Domains, SolverError> {
    require_crisp(inst)?;
    let mut d = Domains::full(inst);
    enforce_ac(inst, &neighbours(inst), &mut d);
    Ok(d)
}

/// Singleton arc consistency: a value is removed when asserting it and
/// enforcing arc consistency wipes out some domain.
pub fn singleton_arc_consistency(inst: &BinaryInstance) -> Result<Domains, SolverError> {
    require_crisp(inst)?;
    let nb = neighbours(inst);
    let mut d = Domains::full(inst);
    enforce_ac(inst, &nb, &mut d);
    let mut changed = true;
    while changed && d.wiped_out.is_none() {
        changed = false;
        for i in 0..inst.n() {
            for a in 0..d.alive[i].len() {
                if !d.alive[i][a] {
                    continue;
                }
                let mut trial = d.clone();
                trial.alive[i].iter_mut().enumerate().for_each(|(b, x)| *x = b == a);
                propagate(inst, &nb, &mut trial, &[i]);
                if trial.wiped_out.is_some() {
                    d.alive[i][a] = false;
                    changed = true;
                    if !d.alive[i].iter().any(|&x| x) {
                        d.wiped_out = Some(i);
                        return Ok(d);
                    }
                    propagate(inst, &nb, &mut d, &[i]);
                    if d.wiped_out.is_some() {
                        return Ok(d);
                    }
                }
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Cost;

    const Z: Cost = Cost::ZERO;
    const I: Cost = Cost::INF;

    #[test]
    fn no_inf_leaves_domains() {
        let mut inst = BinaryInstance::uniform(3, 2);
        inst.set_binary(0, 1, vec![vec![Z, Z], vec![Z, Z]]).unwrap();
        let d = arc_consistency(&inst).unwrap();
        assert_eq!(d.removed(), 0);
    }

    #[test]
    fn unsupported_value_removed() {
        let mut inst = BinaryInstance::uniform(2, 2);
        inst.set_binary(0, 1, vec![vec![I, I], vec![Z, I]]).unwrap();
        let d = arc_consistency(&inst).unwrap();
        assert_eq!(d.alive[0], vec![false, true]);
        assert_eq!(d.alive[1], vec![true, false]);
    }

    #[test]
    fn rejects_soft_tables() {
        let mut inst = BinaryInstance::uniform(2, 2);
        inst.set_binary(0, 1, vec![vec![Z, Cost::ONE], vec![Z, Z]]).unwrap();
        assert!(matches!(arc_consistency(&inst), Err(SolverError::NotCrisp { .. })));
    }

    #[test]
    fn sac_prunes_beyond_ac() {
        // Triangle x0, x1, x2 on {0,1} with "not equal" everywhere: AC keeps
        // everything, SAC detects there is no solution.
        let neq = vec![vec![I, Z], vec![Z, I]];
        let mut inst = BinaryInstance::uniform(3, 2);
        inst.set_binary(0, 1, neq.clone()).unwrap();
        inst.set_binary(0, 2, neq.clone()).unwrap();
        inst.set_binary(1, 2, neq).unwrap();
        assert_eq!(arc_consistency(&inst).unwrap().removed(), 0);
        assert!(singleton_arc_consistency(&inst).unwrap().wiped_out.is_some());
    }
}
