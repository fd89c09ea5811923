//! Domain reduction for instances whose sets have at most two members: a
//! variable with `k > 3` values becomes a chain of `k` variables over at
//! most three values, linked so that finite-cost solutions read
//! `1, …, 1, a_i, 0, …, 0`.

use super::CfcError;
use crate::cost::Cost;
use crate::model::{AssignmentSet, CountFunction, CountInstance, Variable};

/// How an original variable is read back from the reduced instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Same(usize),
    /// Chain of `k` reduced variables starting at `start`.
    Chain { start: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BackMap {
    pub origins: Vec<Origin>,
}

/// Index of the `a_i` value inside the i-th chain variable's domain.
fn chain_value(i: usize, k: usize) -> usize {
    if i == 0 || i == k - 1 {
        1
    } else {
        2
    }
}

impl BackMap {
    /// Original assignment of a reduced one. Chains without an `a_i` value
    /// (infinite cost) read as value 0.
    pub fn apply(&self, x: &[usize]) -> Vec<usize> {
        self.origins
            .iter()
            .map(|o| match *o {
                Origin::Same(v) => x[v],
                Origin::Chain { start, k } => (0..k).find(|&i| x[start + i] == chain_value(i, k)).unwrap_or(0),
            })
            .collect()
    }

    /// Reduced assignment of an original one.
    pub fn lift(&self, x: &[usize]) -> Vec<usize> {
        let mut out = Vec::new();
        for (v, o) in self.origins.iter().enumerate() {
            match *o {
                Origin::Same(_) => out.push(x[v]),
                Origin::Chain { k, .. } => {
                    // Values before the chosen one read "1", after it "0".
                    for i in 0..k {
                        let value = if i == x[v] {
                            chain_value(i, k)
                        } else if i < x[v] {
                            if i == 0 {
                                0
                            } else {
                                1
                            }
                        } else {
                            0
                        };
                        out.push(value);
                    }
                }
            }
        }
        out
    }
}

fn fresh(name: &str, taken: &[&str]) -> String {
    let mut s = name.to_string();
    while taken.contains(&s.as_str()) {
        s.push('\'');
    }
    s
}

/// Replaces every domain larger than three by a chain of small domains.
pub fn reduce_domains_pairsets(inst: &CountInstance) -> Result<(CountInstance, BackMap), CfcError> {
    if let Some((k, s)) = inst.sets().iter().enumerate().find(|(_, s)| s.len() > 2) {
        return Err(CfcError::SetTooLarge { set: k, size: s.len() });
    }
    let mut vars = Vec::new();
    let mut origins = Vec::new();
    // Where (v, a) lands in the reduced instance.
    let mut place: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut coupling = Vec::new();
    for var in inst.variables() {
        let k = var.domain.len();
        if k <= 3 {
            origins.push(Origin::Same(vars.len()));
            place.push((0..k).map(|a| (vars.len(), a)).collect());
            vars.push(var.clone());
            continue;
        }
        let start = vars.len();
        origins.push(Origin::Chain { start, k });
        let mut p = Vec::with_capacity(k);
        for (i, name) in var.domain.iter().enumerate() {
            let dom: Vec<String> = if i == 0 {
                vec![fresh("1", &[name]), name.clone()]
            } else if i == k - 1 {
                vec![fresh("0", &[name]), name.clone()]
            } else {
                vec![fresh("0", &[name]), fresh("1", &[name]), name.clone()]
            };
            p.push((vars.len(), chain_value(i, k)));
            vars.push(Variable::new(format!("{}.{}", var.name, i + 1), dom));
        }
        // Exactly one of "v_i = 1" and "v_{i+1} = 0" holds.
        for i in 0..k - 1 {
            let one = if i == 0 { 0 } else { 1 };
            let g = CountFunction::new(vec![Cost::INF, Cost::ZERO, Cost::INF])?;
            coupling.push(AssignmentSet::new(vec![(start + i, one), (start + i + 1, 0)], g)?);
        }
        place.push(p);
    }
    let mut sets = Vec::new();
    for s in inst.sets() {
        let members: Vec<(usize, usize)> = s.members().iter().map(|&(v, a)| place[v][a]).collect();
        let mut distinct: Vec<usize> = members.iter().map(|m| m.0).collect();
        distinct.sort_unstable();
        distinct.dedup();
        // Two values of one chained variable now sit on two variables; a
        // finite solution never hits both.
        let mut g = s.g().values().to_vec();
        g.resize(distinct.len() + 1, Cost::INF);
        sets.push(AssignmentSet::new(members, CountFunction::new(g)?)?);
    }
    sets.extend(coupling);
    let out = CountInstance::new(vars, sets, inst.constant())?;
    Ok((out, BackMap { origins }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::oracle::all_count_values;

    #[test]
    fn small_domains_untouched() {
        let inst = CountInstance::new(vec![Variable::indexed("x", 3)], vec![], Cost::ZERO).unwrap();
        let (out, map) = reduce_domains_pairsets(&inst).unwrap();
        assert_eq!(out, inst);
        assert_eq!(map.origins, vec![Origin::Same(0)]);
    }

    #[test]
    fn five_values_give_staircases() {
        let inst = CountInstance::new(vec![Variable::indexed("x", 5)], vec![], Cost::ZERO).unwrap();
        let (out, map) = reduce_domains_pairsets(&inst).unwrap();
        assert_eq!(out.n(), 5);
        assert_eq!(out.sets().len(), 4);
        let finite: Vec<Vec<usize>> = all_count_values(&out).into_iter().filter(|(_, c)| c.is_finite()).map(|(x, _)| x).collect();
        assert_eq!(finite.len(), 5);
        for x in &finite {
            let back = map.apply(x);
            assert_eq!(&map.lift(&back), x);
        }
        let mut originals: Vec<usize> = finite.iter().map(|x| map.apply(x)[0]).collect();
        originals.sort_unstable();
        assert_eq!(originals, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn rejects_triples() {
        let set = AssignmentSet::new(vec![(0, 0), (1, 0), (2, 0)], CountFunction::zero(3)).unwrap();
        let vars = (0..3).map(|i| Variable::indexed(format!("x{i}"), 2)).collect();
        let inst = CountInstance::new(vars, vec![set], Cost::ZERO).unwrap();
        assert!(matches!(reduce_domains_pairsets(&inst), Err(CfcError::SetTooLarge { set: 0, size: 3 })));
    }
}
