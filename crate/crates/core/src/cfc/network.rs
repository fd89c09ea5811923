//! Flow network of a laminar instance and the end-to-end solver.
//!
//! Nodes: source, one per variable, one per assignment, one per set; the
//! universal set is the sink. A unit of flow leaves the source for each
//! variable, picks one of its assignments, enters the smallest set holding
//! that assignment and climbs the forest to the root, so the flow through
//! the arc leaving set `A_i` equals `|x ∩ A_i|` and is priced by `g_i`.

use serde_json::json;

use super::family::{check_convexity, check_family, FamilyKind, Universe};
use super::laminar::{build_laminar_forest, crossfree_to_laminar_with_stats, LaminarForest};
use super::CfcError;
use crate::cost::Cost;
use crate::flow::{min_convex_cost_flow, Arc, FlowNetwork, FlowOutcome};
use crate::model::{CountFunction, CountInstance};
use crate::solution::SolveResult;

/// Arc indices tying the network back to the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkMap {
    /// `choice[i][a]`: arc from variable `i` to assignment `(i, a)`.
    pub choice: Vec<Vec<usize>>,
    /// Arc leaving each non-root set towards its father.
    pub set_arc: Vec<Option<usize>>,
}

fn fixed(values: &[Cost]) -> CountFunction {
    CountFunction::new(values.to_vec()).expect("contiguous")
}

/// Builds the network whose value-`n` integral flows are the solutions.
pub fn build_network(forest: &LaminarForest, inst: &CountInstance) -> (FlowNetwork, NetworkMap) {
    let n = inst.n();
    let u = Universe::of(inst);
    let big_n = u.size();
    let set_nodes: Vec<usize> = forest.order.iter().copied().filter(|&k| Some(k) != forest.root_set).collect();
    let mut node_of_set = vec![usize::MAX; inst.sets().len()];
    for (p, &k) in set_nodes.iter().enumerate() {
        node_of_set[k] = 1 + n + big_n + p;
    }
    let sink = 1 + n + big_n + set_nodes.len();
    let target = |s: Option<usize>| s.map_or(sink, |k| node_of_set[k]);
    let mut net = FlowNetwork::new(sink + 1, 0, sink, n);
    let one = [Cost::INF, Cost::ZERO];
    let unit = [Cost::ZERO, Cost::ZERO];
    for i in 0..n {
        net.add_arc(Arc::new(0, 1 + i, fixed(&one)));
    }
    let mut choice = Vec::with_capacity(n);
    for (i, var) in inst.variables().iter().enumerate() {
        let arcs = (0..var.domain.len()).map(|a| net.add_arc(Arc::new(1 + i, 1 + n + u.id(i, a), fixed(&unit)))).collect();
        choice.push(arcs);
    }
    for k in 0..big_n {
        net.add_arc(Arc::new(1 + n + k, target(forest.smallest[k]), fixed(&unit)));
    }
    let mut set_arc = vec![None; inst.sets().len()];
    for &k in &set_nodes {
        let g = inst.sets()[k].g().clone();
        set_arc[k] = Some(net.add_arc(Arc::new(node_of_set[k], target(forest.father[k]), g)));
    }
    (net, NetworkMap { choice, set_arc })
}

/// Exact minimum of a cross-free convex instance.
pub fn solve_cfc(inst: &CountInstance) -> Result<SolveResult, CfcError> {
    const ID: &str = "cfc";
    for (k, s) in inst.sets().iter().enumerate() {
        if let Some(index) = check_convexity(s.g()).violation {
            return Err(CfcError::NonConvex { set: k, index });
        }
    }
    let u = Universe::of(inst);
    let family = check_family(&inst.sets().iter().map(|s| u.set(s)).collect::<Vec<_>>());
    if family.kind == FamilyKind::Neither {
        let (a, b) = family.witness.expect("witness");
        return Err(CfcError::NotCrossFree { a, b });
    }
    let (lam, stats) = crossfree_to_laminar_with_stats(inst)?;
    let forest = build_laminar_forest(&lam)?;
    let (net, map) = build_network(&forest, &lam);
    let n = inst.n();
    let root_cost = forest.root_set.map_or(Cost::ZERO, |k| lam.sets()[k].g().at(n));
    let outcome = min_convex_cost_flow(&net)?;
    let (x, claimed, flow_cost) = match &outcome {
        FlowOutcome::Optimal(flow) => {
            let x: Vec<usize> = map
                .choice
                .iter()
                .map(|arcs| arcs.iter().position(|&e| flow.amounts[e] == 1).expect("one unit per variable"))
                .collect();
            let claimed = flow.cost.checked_add(lam.constant())?.checked_add(root_cost)?;
            (x, claimed, Some(flow.cost))
        }
        FlowOutcome::Infeasible { .. } => (vec![0; n], Cost::INF, None),
    };
    let actual = inst.evaluate(&x)?;
    if actual != claimed {
        return Err(CfcError::Invariant(format!("assignment {x:?} evaluates to {actual}, flow gives {claimed}")));
    }
    let mut r = SolveResult::new(ID, x, actual)
        .note("family", family.kind.label())
        .note("sets_after_laminarisation", lam.sets().len())
        .note("folded_large_sets", stats.folded_large)
        .note("added_complements", stats.added_complements)
        .note("folded_complementary_pairs", stats.folded_pairs)
        .note("network", json!({"nodes": net.nodes, "arcs": net.arcs.len()}));
    r = match (&outcome, flow_cost) {
        (FlowOutcome::Optimal(_), Some(fc)) => r.note("flow_cost", fc.to_string()),
        (FlowOutcome::Infeasible { witness }, _) => r.note("infeasible", json!({"arc": witness})),
        _ => r,
    };
    Ok(r)
}
