//! Small named instances with known structure, shipped as JSON under
//! `fixtures/` and rebuilt here so tests can check the files stay in sync.

use crate::cost::Cost;
use crate::model::{AssignmentSet, CountFunction, CountInstance, Variable};

use super::generators::{gen_nested_gcc, gen_soft_gcc};

pub const FIXTURE_NAMES: [&str; 7] = [
    "maxsat-renamable",
    "maxsat-renamed",
    "nested-sat-overlap",
    "laminar-3sat",
    "ternary-pairs",
    "soft-gcc",
    "nested-gcc",
];

fn boolean(names: &[&str]) -> Vec<Variable> {
    names.iter().map(|n| Variable::new(*n, vec!["0".into(), "1".into()])).collect()
}

/// A clause as a count constraint: `penalty` if no literal holds.
/// Literals are `(variable, positive)`.
fn clause(lits: &[(usize, bool)], penalty: Cost) -> AssignmentSet {
    let mut g = vec![Cost::ZERO; lits.len() + 1];
    g[0] = penalty;
    AssignmentSet::new(lits.iter().map(|&(v, p)| (v, usize::from(p))).collect(), CountFunction::new(g).expect("contiguous"))
        .expect("distinct variables")
}

/// "At most `|A| − 1` of these hold", with a unit penalty.
fn at_most_all_but_one(lits: &[(usize, bool)]) -> AssignmentSet {
    let mut g = vec![Cost::ZERO; lits.len() + 1];
    g[lits.len()] = Cost::ONE;
    AssignmentSet::new(lits.iter().map(|&(v, p)| (v, usize::from(p))).collect(), CountFunction::new(g).expect("contiguous"))
        .expect("distinct variables")
}

fn build(name: &str) -> Option<CountInstance> {
    let (a, b, c, d, e) = (0, 1, 2, 3, 4);
    let one = Cost::ONE;
    let hard = Cost::INF;
    let inst = match name {
        // MAX-SAT (a∨b∨c)(c∨d)(¬c∨¬d∨e)(¬a∨¬e): the first two clauses cross.
        "maxsat-renamable" => CountInstance::new(
            boolean(&["a", "b", "c", "d", "e"]),
            vec![
                clause(&[(a, true), (b, true), (c, true)], one),
                clause(&[(c, true), (d, true)], one),
                clause(&[(c, false), (d, false), (e, true)], one),
                clause(&[(a, false), (e, false)], one),
            ],
            Cost::ZERO,
        ),
        // The same objective with (c∨d) written as "not both ¬c and ¬d".
        "maxsat-renamed" => CountInstance::new(
            boolean(&["a", "b", "c", "d", "e"]),
            vec![
                clause(&[(a, true), (b, true), (c, true)], one),
                at_most_all_but_one(&[(c, false), (d, false)]),
                clause(&[(c, false), (d, false), (e, true)], one),
                clause(&[(a, false), (e, false)], one),
            ],
            Cost::ZERO,
        ),
        // SAT (x∨y)(y∨z)(¬y∨w): no renaming separates the clauses.
        "nested-sat-overlap" => {
            let (x, y, z, w) = (0, 1, 2, 3);
            CountInstance::new(
                boolean(&["x", "y", "z", "w"]),
                vec![clause(&[(x, true), (y, true)], hard), clause(&[(y, true), (z, true)], hard), clause(&[(y, false), (w, true)], hard)],
                Cost::ZERO,
            )
        }
        // SAT with four pairwise disjoint literal sets.
        "laminar-3sat" => {
            let (x, y, z, u, v, w) = (0, 1, 2, 3, 4, 5);
            CountInstance::new(
                boolean(&["x", "y", "z", "u", "v", "w"]),
                vec![
                    clause(&[(x, true), (y, true), (z, true)], hard),
                    clause(&[(x, false), (u, true), (v, true)], hard),
                    clause(&[(y, false), (u, false), (w, true)], hard),
                    clause(&[(z, false), (v, false), (w, false)], hard),
                ],
                Cost::ZERO,
            )
        }
        // Four ternary variables, four disjoint pair sets.
        "ternary-pairs" => {
            let (x, y, z, w) = (0, 1, 2, 3);
            let vars = ["x", "y", "z", "w"].iter().map(|n| Variable::indexed(*n, 3)).collect();
            let pair = |m: Vec<(usize, usize)>| AssignmentSet::new(m, CountFunction::zero(2)).expect("pair");
            CountInstance::new(
                vars,
                vec![pair(vec![(x, 0), (y, 0)]), pair(vec![(y, 1), (z, 0)]), pair(vec![(x, 1), (z, 1)]), pair(vec![(y, 2), (w, 0)])],
                Cost::ZERO,
            )
        }
        "soft-gcc" => return gen_soft_gcc(4, 2, &[(2, 3), (0, 1)]).ok(),
        "nested-gcc" => {
            let groups = vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2], vec![0]];
            let bounds = vec![vec![(2, 3), (2, 5)], vec![(0, 1), (2, 3)], vec![(1, 1), (0, 0)]];
            return gen_nested_gcc(5, 2, &groups, &bounds).ok();
        }
        _ => return None,
    };
    Some(inst.expect("fixture is well-formed"))
}

/// Instance by name.
pub fn fixture(name: &str) -> Option<CountInstance> {
    build(name)
}

/// Every fixture, in [`FIXTURE_NAMES`] order.
pub fn fixtures() -> Vec<(&'static str, CountInstance)> {
    FIXTURE_NAMES.iter().map(|&n| (n, build(n).expect("listed fixture"))).collect()
}
