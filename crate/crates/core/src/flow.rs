//! Minimum-cost integral flow with convex piecewise-linear arc costs.
//!
//! Each arc carries a convex cost table `w(0..=c)` that is finite exactly
//! on `[d, c]`. The solver removes the `d` forced units with the usual
//! excess/deficit transformation, expands the rest into unit arcs with
//! non-decreasing marginal costs, pre-saturates the negative marginals so
//! every residual arc starts with a non-negative cost, and then runs
//! successive shortest paths with Dijkstra on reduced costs.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cfc::check_convexity;
use crate::cost::{Cost, CostError, Rational, Scale};
use crate::model::CountFunction;

#[derive(Debug, Error, PartialEq)]
pub enum FlowError {
    #[error("arc {arc}: node index out of range ({nodes} nodes)")]
    NodeOutOfRange { arc: usize, nodes: usize },
    #[error("arc {arc}: cost is not convex at count {index}")]
    NonConvex { arc: usize, index: usize },
    #[error("source and sink must be distinct nodes in range")]
    Terminals,
    #[error("flow invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Cost(#[from] CostError),
}

/// An arc with a convex cost over `0..=capacity`, finite exactly on
/// `[demand, capacity]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub cost: CountFunction,
}

impl Arc {
    pub fn new(tail: usize, head: usize, cost: CountFunction) -> Arc {
        Arc { tail, head, cost }
    }

    /// Linear cost `unit · f` on `[lower, upper]`.
    pub fn linear(tail: usize, head: usize, lower: usize, upper: usize, unit: Cost) -> Arc {
        let values = (0..=upper)
            .map(|f| if f < lower { Cost::INF } else { unit.checked_mul_int(f as u64).expect("small linear cost") })
            .collect();
        Arc::new(tail, head, CountFunction::new(values).expect("contiguous"))
    }

    /// `(demand, capacity)`; `None` if no flow amount is admissible.
    pub fn bounds(&self) -> Option<(usize, usize)> {
        self.cost.support()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlowNetwork {
    pub nodes: usize,
    pub source: usize,
    pub sink: usize,
    pub arcs: Vec<Arc>,
    /// Required flow value from source to sink.
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub amounts: Vec<usize>,
    pub cost: Cost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowOutcome {
    Optimal(Flow),
    /// No feasible flow; `witness` names an arc whose demand or
    /// admissibility could not be met, when one can be singled out.
    Infeasible { witness: Option<usize> },
}

impl FlowOutcome {
    pub fn flow(&self) -> Option<&Flow> {
        match self {
            FlowOutcome::Optimal(f) => Some(f),
            FlowOutcome::Infeasible { .. } => None,
        }
    }
}

/// Unit-arc form of a convex arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedArc {
    /// Units forced by the demand.
    pub forced: usize,
    /// `w(demand)`, paid by the forced units.
    pub base: Cost,
    /// `w(k) − w(k−1)` for `k = demand+1..=capacity`, non-decreasing.
    pub marginals: Vec<Rational>,
}

/// Splits a convex arc into forced units plus unit arcs of increasing
/// marginal cost.
pub fn expand_convex_arc(arc: &Arc) -> Result<Option<ExpandedArc>, FlowError> {
    let Some((d, c)) = arc.bounds() else { return Ok(None) };
    let report = check_convexity(&arc.cost);
    if let Some(index) = report.violation {
        return Err(FlowError::NonConvex { arc: 0, index });
    }
    let w = |k: usize| arc.cost.at(k).as_ratio().expect("finite on support");
    let marginals = (d + 1..=c).map(|k| w(k) - w(k - 1)).collect();
    Ok(Some(ExpandedArc { forced: d, base: arc.cost.at(d), marginals }))
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize, value: usize) -> FlowNetwork {
        FlowNetwork { nodes, source, sink, arcs: Vec::new(), value }
    }

    pub fn add_arc(&mut self, arc: Arc) -> usize {
        self.arcs.push(arc);
        self.arcs.len() - 1
    }

    fn validate(&self) -> Result<(), FlowError> {
        if self.source >= self.nodes || self.sink >= self.nodes || self.source == self.sink {
            return Err(FlowError::Terminals);
        }
        for (k, a) in self.arcs.iter().enumerate() {
            if a.tail >= self.nodes || a.head >= self.nodes {
                return Err(FlowError::NodeOutOfRange { arc: k, nodes: self.nodes });
            }
            if let Some(index) = check_convexity(&a.cost).violation {
                return Err(FlowError::NonConvex { arc: k, index });
            }
        }
        Ok(())
    }

    /// Exact cost of an amount vector; `INF` if some amount is inadmissible.
    pub fn cost_of(&self, amounts: &[usize]) -> Result<Cost, FlowError> {
        let mut total = Cost::ZERO;
        for (a, &f) in self.arcs.iter().zip(amounts) {
            total = total.checked_add(a.cost.at(f))?;
        }
        Ok(total)
    }

    /// Checks conservation, bounds and value of an amount vector.
    pub fn check_flow(&self, amounts: &[usize]) -> Result<(), String> {
        if amounts.len() != self.arcs.len() {
            return Err(format!("{} amounts for {} arcs", amounts.len(), self.arcs.len()));
        }
        let mut net = vec![0i64; self.nodes];
        for (k, (a, &f)) in self.arcs.iter().zip(amounts).enumerate() {
            match a.bounds() {
                Some((d, c)) if (d..=c).contains(&f) => {}
                _ => return Err(format!("arc {k} carries {f}, outside its bounds")),
            }
            net[a.tail] += f as i64;
            net[a.head] -= f as i64;
        }
        for (v, &x) in net.iter().enumerate() {
            let want = if v == self.source {
                self.value as i64
            } else if v == self.sink {
                -(self.value as i64)
            } else {
                0
            };
            if x != want {
                return Err(format!("node {v} has net outflow {x}, expected {want}"));
            }
        }
        Ok(())
    }

    /// Graphviz rendering, optionally annotated with a flow.
    pub fn to_dot(&self, flow: Option<&Flow>) -> String {
        let mut s = String::from("digraph flow {\n  rankdir=LR;\n");
        let _ = writeln!(s, "  n{} [shape=doublecircle,label=\"s\"];", self.source);
        let _ = writeln!(s, "  n{} [shape=doublecircle,label=\"t\"];", self.sink);
        for (k, a) in self.arcs.iter().enumerate() {
            let (d, c) = a.bounds().unwrap_or((0, 0));
            let costs: Vec<String> = a.cost.values().iter().map(Cost::to_string).collect();
            let mut label = format!("[{d},{c}] w={}", costs.join(" "));
            if let Some(f) = flow {
                let _ = write!(label, " f={}", f.amounts[k]);
            }
            let _ = writeln!(s, "  n{} -> n{} [label=\"{label}\"];", a.tail, a.head);
        }
        s.push_str("}\n");
        s
    }
}

struct Edge {
    to: usize,
    cap: i64,
    cost: i128,
}

struct Residual {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Residual {
    fn new(nodes: usize) -> Residual {
        Residual { edges: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64, cost: i128) -> usize {
        let k = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge { to: from, cap: 0, cost: -cost });
        self.adj[from].push(k);
        self.adj[to].push(k + 1);
        k
    }

    fn push(&mut self, e: usize, amount: i64) {
        self.edges[e].cap -= amount;
        self.edges[e ^ 1].cap += amount;
    }

    /// Dijkstra on reduced costs; returns parent edges into each node.
    fn shortest_paths(&self, s: usize, pot: &[i128]) -> (Vec<Option<i128>>, Vec<Option<usize>>) {
        let n = self.adj.len();
        let mut dist: Vec<Option<i128>> = vec![None; n];
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[s] = Some(0);
        heap.push(Reverse((0i128, s)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if dist[v] != Some(d) {
                continue;
            }
            for &e in &self.adj[v] {
                let edge = &self.edges[e];
                if edge.cap <= 0 {
                    continue;
                }
                let nd = d + edge.cost + pot[v] - pot[edge.to];
                debug_assert!(edge.cost + pot[v] - pot[edge.to] >= 0, "negative reduced cost");
                if dist[edge.to].map_or(true, |old| nd < old) {
                    dist[edge.to] = Some(nd);
                    parent[edge.to] = Some(e);
                    heap.push(Reverse((nd, edge.to)));
                }
            }
        }
        (dist, parent)
    }
}

/// Minimum-cost integral flow of the required value, or infeasibility.
pub fn min_convex_cost_flow(net: &FlowNetwork) -> Result<FlowOutcome, FlowError> {
    net.validate()?;
    let mut expanded = Vec::with_capacity(net.arcs.len());
    for (k, a) in net.arcs.iter().enumerate() {
        match expand_convex_arc(a).map_err(|e| match e {
            FlowError::NonConvex { index, .. } => FlowError::NonConvex { arc: k, index },
            e => e,
        })? {
            Some(x) => expanded.push(x),
            None => return Ok(FlowOutcome::Infeasible { witness: Some(k) }),
        }
    }
    let scale = Scale::for_costs(expanded.iter().flat_map(|x| {
        std::iter::once(x.base).chain(x.marginals.iter().map(|m| Cost::from_ratio(if *m < Rational::from_integer(0) { -*m } else { *m }).expect("non-negative")))
    }))?;

    // Node supplies: positive means the node must send that much out.
    let mut supply = vec![0i64; net.nodes];
    supply[net.source] += net.value as i64;
    supply[net.sink] -= net.value as i64;
    let (ss, tt) = (net.nodes, net.nodes + 1);
    let mut res = Residual::new(net.nodes + 2);
    let mut amounts: Vec<usize> = expanded.iter().map(|x| x.forced).collect();
    let mut unit_edges: Vec<(usize, usize)> = Vec::new();
    for (k, (a, x)) in net.arcs.iter().zip(&expanded).enumerate() {
        supply[a.tail] -= x.forced as i64;
        supply[a.head] += x.forced as i64;
        for m in &x.marginals {
            let cost = i128::from(scale.rational_to_int(*m)?);
            let e = res.add(a.tail, a.head, 1, cost);
            if cost < 0 {
                // Saturate up front so every residual arc has cost ≥ 0.
                res.push(e, 1);
                amounts[k] += 1;
                supply[a.tail] -= 1;
                supply[a.head] += 1;
            }
            unit_edges.push((e, k));
        }
    }
    let mut required = 0i64;
    for (v, &b) in supply.iter().enumerate() {
        if b > 0 {
            res.add(ss, v, b, 0);
            required += b;
        } else if b < 0 {
            res.add(v, tt, -b, 0);
        }
    }

    let mut pot = vec![0i128; net.nodes + 2];
    let mut sent = 0i64;
    while sent < required {
        let (dist, parent) = res.shortest_paths(ss, &pot);
        let Some(_) = dist[tt] else {
            let witness = net.arcs.iter().position(|a| a.bounds().map_or(false, |(d, _)| d > 0));
            return Ok(FlowOutcome::Infeasible { witness });
        };
        // Capping at the sink distance keeps reduced costs non-negative for
        // nodes the search did not settle or did not reach.
        let dtt = dist[tt].expect("reached");
        for v in 0..pot.len() {
            pot[v] += dist[v].map_or(dtt, |d| d.min(dtt));
        }
        let mut bottleneck = required - sent;
        let mut v = tt;
        while let Some(e) = parent[v] {
            bottleneck = bottleneck.min(res.edges[e].cap);
            v = res.edges[e ^ 1].to;
        }
        let mut v = tt;
        while let Some(e) = parent[v] {
            res.push(e, bottleneck);
            v = res.edges[e ^ 1].to;
        }
        sent += bottleneck;
    }

    // Unit arcs pre-saturated at cost < 0 may have been reverted; recount.
    amounts = expanded.iter().map(|x| x.forced).collect();
    for &(e, k) in &unit_edges {
        amounts[k] += usize::from(res.edges[e].cap == 0);
    }
    net.check_flow(&amounts).map_err(FlowError::Invariant)?;
    let cost = net.cost_of(&amounts)?;
    Ok(FlowOutcome::Optimal(Flow { amounts, cost }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Cost {
        s.parse().unwrap()
    }

    fn f(vals: &[&str]) -> CountFunction {
        CountFunction::new(vals.iter().map(|s| c(s)).collect()).unwrap()
    }

    #[test]
    fn forced_single_arc() {
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(Arc::new(0, 1, f(&["inf", "7"])));
        let out = min_convex_cost_flow(&net).unwrap();
        assert_eq!(out.flow().unwrap().cost, c("7"));
        assert_eq!(out.flow().unwrap().amounts, vec![1]);
    }

    #[test]
    fn parallel_linear_arcs() {
        let mut net = FlowNetwork::new(2, 0, 1, 3);
        net.add_arc(Arc::linear(0, 1, 0, 2, c("2")));
        net.add_arc(Arc::linear(0, 1, 0, 2, c("3")));
        let flow = min_convex_cost_flow(&net).unwrap().flow().unwrap().clone();
        assert_eq!(flow.amounts, vec![2, 1]);
        assert_eq!(flow.cost, c("7"));
    }

    #[test]
    fn marginals_of_a_convex_table() {
        let e = expand_convex_arc(&Arc::new(0, 1, f(&["0", "1", "3", "6"]))).unwrap().unwrap();
        assert_eq!(e.marginals, vec![Rational::from(1), Rational::from(2), Rational::from(3)]);
        let e = expand_convex_arc(&Arc::new(0, 1, f(&["inf", "2", "2"]))).unwrap().unwrap();
        assert_eq!((e.forced, e.base, e.marginals), (1, c("2"), vec![Rational::from(0)]));
    }

    #[test]
    fn decreasing_marginals_are_used() {
        // Cost [2,1,0,0,1,2]: the cheapest amount is 2 or 3, routed through a
        // cycle that is not on any source-sink path.
        let mut net = FlowNetwork::new(3, 0, 1, 0);
        net.add_arc(Arc::new(1, 2, f(&["2", "1", "0", "0", "1", "2"])));
        net.add_arc(Arc::linear(2, 1, 0, 5, Cost::ZERO));
        let flow = min_convex_cost_flow(&net).unwrap().flow().unwrap().clone();
        assert_eq!(flow.cost, Cost::ZERO);
        assert_eq!(flow.amounts, vec![2, 2]);
    }

    #[test]
    fn infeasible_demand() {
        let mut net = FlowNetwork::new(3, 0, 1, 1);
        net.add_arc(Arc::linear(0, 1, 0, 1, Cost::ONE));
        net.add_arc(Arc::linear(1, 2, 1, 1, Cost::ONE));
        assert!(matches!(min_convex_cost_flow(&net).unwrap(), FlowOutcome::Infeasible { .. }));
    }

    #[test]
    fn non_convex_rejected() {
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(Arc::new(0, 1, f(&["0", "2", "3", "6"])));
        assert_eq!(min_convex_cost_flow(&net).unwrap_err(), FlowError::NonConvex { arc: 0, index: 0 });
    }

    #[test]
    fn dot_mentions_flow() {
        let mut net = FlowNetwork::new(2, 0, 1, 1);
        net.add_arc(Arc::linear(0, 1, 0, 1, Cost::ONE));
        let out = min_convex_cost_flow(&net).unwrap();
        assert!(net.to_dot(out.flow()).contains("f=1"));
    }
}
