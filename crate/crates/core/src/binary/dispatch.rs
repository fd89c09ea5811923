//! Routes a binary instance to the solver of the first tractable cell its
//! profiles fall into, trying schemes in the order CSP, MAXCSP, MAXM, MIN0,
//! ORDER. Unimplemented and NP-hard cells fall back to exhaustive search
//! within a budget.

use serde_json::{json, Map, Value};

use super::solvers::*;
use super::{SolverError, SolverOptions};
use crate::cost::Cost;
use crate::model::BinaryInstance;
use crate::solution::SolveResult;
use crate::testkit::oracle::{oracle_binary, search_space};
use crate::triangles::{has_soft_unaries, profile, report, verdict, Ruling, Scheme, SolverId, Verdict};

pub const DEFAULT_ORACLE_BUDGET: u64 = 2_000_000;

/// Order in which scheme verdicts are consulted.
pub const PREFERENCE: [Scheme; 5] = [Scheme::Csp, Scheme::MaxCsp, Scheme::MaxM, Scheme::Min0, Scheme::Order];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DispatchOptions {
    pub oracle_budget: u64,
    pub solver: SolverOptions,
}

impl Default for DispatchOptions {
    fn default() -> Self {
        DispatchOptions { oracle_budget: DEFAULT_ORACLE_BUDGET, solver: SolverOptions::default() }
    }
}

/// Verdict of one applicable scheme.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeReport {
    pub scheme: Scheme,
    pub ruling: Ruling,
    pub report: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispatchOutcome {
    /// `None` when no solver applies and the search space exceeds the budget.
    pub result: Option<SolveResult>,
    pub verdicts: Vec<SchemeReport>,
    /// Scheme whose verdict chose the route, if any.
    pub routed_by: Option<Scheme>,
}

impl DispatchOutcome {
    pub fn to_value(&self) -> Value {
        let mut m = match &self.result {
            Some(r) => match r.to_value() {
                Value::Object(m) => m,
                _ => unreachable!(),
            },
            None => {
                let mut m = Map::new();
                m.insert("status".into(), "NOT_SOLVED".into());
                m
            }
        };
        m.insert("routed_by".into(), self.routed_by.map_or(Value::Null, |s| s.name().into()));
        m.insert("verdicts".into(), Value::Array(self.verdicts.iter().map(|v| v.report.clone()).collect()));
        Value::Object(m)
    }
}

fn applicable(inst: &BinaryInstance, scheme: Scheme) -> bool {
    let binaries = || inst.binary_tables().flat_map(|(_, _, t)| t.entries().iter().copied());
    let unit = |c: Cost| c.is_zero() || c == Cost::ONE;
    match scheme {
        Scheme::Csp => inst.binaries_crisp(),
        // The Max-CSP solvers read unary costs as 0/1 penalties too.
        Scheme::MaxCsp => {
            binaries().all(unit) && (0..inst.n()).all(|i| (0..inst.domain_size(i)).all(|a| unit(inst.unary(i, a))))
        }
        Scheme::MaxM | Scheme::Min0 => binaries().all(Cost::is_finite),
        Scheme::Order => true,
    }
}

fn run(id: SolverId, inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    match id {
        SolverId::Sac => solve_sac_class(inst, opts),
        SolverId::Trivial => solve_trivial_class(inst, opts),
        SolverId::Lr => solve_lr_class(inst, opts),
        SolverId::MatchingCardinality => solve_matching_cardinality_class(inst, opts),
        SolverId::Min0 => solve_min0_class(inst, opts),
        SolverId::WeightedMatching => solve_weighted_matching_class(inst, opts),
    }
}

/// Classifies under every applicable scheme and solves with the first
/// implemented tractable route, else the bounded oracle.
pub fn dispatch(inst: &BinaryInstance, opts: DispatchOptions) -> Result<DispatchOutcome, SolverError> {
    let soft = has_soft_unaries(inst);
    let mut verdicts = Vec::new();
    for scheme in PREFERENCE {
        if !applicable(inst, scheme) {
            continue;
        }
        let p = profile(inst, scheme)?;
        let ruling = verdict(&p, inst.domain_max(), soft);
        verdicts.push(SchemeReport { scheme, ruling, report: report(&p, ruling, inst.n()) });
    }
    for v in &verdicts {
        let result = match v.ruling.verdict {
            Verdict::Tractable(id) => run(id, inst, opts.solver)?,
            Verdict::TrivialSmallDomain => solve_small_domain(inst)?,
            _ => continue,
        };
        let routed_by = Some(v.scheme);
        return Ok(DispatchOutcome { result: Some(result), verdicts, routed_by });
    }
    let space = search_space(&inst.domain_sizes());
    let result = if space <= opts.oracle_budget {
        let mut r = oracle_binary(inst, opts.oracle_budget).expect("within budget");
        r.certificate.insert("search_space".into(), json!(space));
        Some(r)
    } else {
        None
    };
    Ok(DispatchOutcome { result, verdicts, routed_by: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cost {
        s.parse().unwrap()
    }

    #[test]
    fn crisp_greater_zero_goes_to_sac() {
        // Value 0 of x0 is incompatible with everything: profile {0, >}.
        let mut inst = BinaryInstance::uniform(3, 3);
        let mut rows = vec![vec![Cost::ZERO; 3]; 3];
        rows[0] = vec![Cost::INF; 3];
        inst.set_binary(0, 1, rows.clone()).unwrap();
        inst.set_binary(0, 2, rows).unwrap();
        inst.set_unary(2, vec![c("1"), c("0"), c("2")]).unwrap();
        let out = dispatch(&inst, DispatchOptions::default()).unwrap();
        assert_eq!(out.result.unwrap().solver, "sac");
        assert_eq!(out.routed_by, Some(Scheme::Csp));
    }

    #[test]
    fn constant_maximum_goes_to_weighted_matching() {
        let mut inst = BinaryInstance::uniform(4, 2);
        for i in 0..4 {
            for j in i + 1..4 {
                let low = match (i, j) {
                    (0, 1) => "2",
                    (2, 3) => "1",
                    _ => "5",
                };
                inst.set_binary(i, j, vec![vec![c("5"), c("5")], vec![c("5"), c(low)]]).unwrap();
            }
        }
        let out = dispatch(&inst, DispatchOptions::default()).unwrap();
        let r = out.result.unwrap();
        assert_eq!(r.solver, "weighted-matching");
        assert_eq!(r.cost, c("23"));
    }

    #[test]
    fn over_budget_is_not_solved() {
        // Ultrametric-looking costs on many variables: ORDER {<,=}.
        let mut inst = BinaryInstance::uniform(12, 3);
        for i in 0..12 {
            for j in i + 1..12 {
                let v = if i < 6 && j < 6 { "1" } else { "2" };
                inst.set_binary(i, j, vec![vec![c(v), c("3"), c("3")]; 3]).unwrap();
            }
        }
        let out = dispatch(&inst, DispatchOptions { oracle_budget: 1000, ..Default::default() }).unwrap();
        assert!(out.result.is_none());
        assert_eq!(out.to_value()["status"], "NOT_SOLVED");
    }
}
