//! Reference flow solvers: exhaustive enumeration of integral flows, and a
//! textbook cycle-canceling solver for networks with linear arc costs.

use crate::cost::{Cost, Rational};
use crate::flow::FlowNetwork;

use super::oracle::BudgetExceeded;

/// Net outflow each node must have.
fn supplies(net: &FlowNetwork) -> Vec<i64> {
    let mut b = vec![0i64; net.nodes];
    b[net.source] += net.value as i64;
    b[net.sink] -= net.value as i64;
    b
}

struct Search<'a, F> {
    net: &'a FlowNetwork,
    caps: Vec<i64>,
    /// Outflow minus inflow minus supply, over the arcs fixed so far.
    balance: Vec<i64>,
    /// Capacity of unfixed arcs leaving / entering each node.
    out_left: Vec<i64>,
    in_left: Vec<i64>,
    amounts: Vec<usize>,
    steps: u64,
    budget: u64,
    count: u64,
    visit: F,
}

impl<F: FnMut(&[usize])> Search<'_, F> {
    /// Whether the node can still be balanced by its unfixed arcs.
    fn open(&self, v: usize) -> bool {
        -self.out_left[v] <= self.balance[v] && self.balance[v] <= self.in_left[v]
    }

    fn run(&mut self, k: usize) -> Result<(), BudgetExceeded> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(BudgetExceeded { space: self.steps, budget: self.budget });
        }
        if k == self.net.arcs.len() {
            self.count += 1;
            (self.visit)(&self.amounts);
            return Ok(());
        }
        let (t, h) = (self.net.arcs[k].tail, self.net.arcs[k].head);
        self.out_left[t] -= self.caps[k];
        self.in_left[h] -= self.caps[k];
        for f in 0..=self.caps[k] {
            self.balance[t] += f;
            self.balance[h] -= f;
            self.amounts[k] = f as usize;
            if self.open(t) && self.open(h) {
                self.run(k + 1)?;
            }
            self.balance[t] -= f;
            self.balance[h] += f;
        }
        self.out_left[t] += self.caps[k];
        self.in_left[h] += self.caps[k];
        Ok(())
    }
}

/// Calls `visit` on every integral flow of the required value that meets
/// conservation and `0 ≤ f(a) ≤ capacity`. Amounts outside an arc's finite
/// range are still visited; the caller prices them.
///
/// Backtracks over the arcs in order, pruning as soon as some node can no
/// longer be balanced by its unfixed arcs. The budget bounds the number of
/// search nodes. Returns the number of flows visited.
pub fn enumerate_flows(net: &FlowNetwork, budget: u64, visit: impl FnMut(&[usize])) -> Result<u64, BudgetExceeded> {
    let caps: Vec<i64> = net.arcs.iter().map(|a| a.cost.max_count() as i64).collect();
    let mut out_left = vec![0i64; net.nodes];
    let mut in_left = vec![0i64; net.nodes];
    for (a, &c) in net.arcs.iter().zip(&caps) {
        out_left[a.tail] += c;
        in_left[a.head] += c;
    }
    let balance: Vec<i64> = supplies(net).iter().map(|b| -b).collect();
    let mut search =
        Search { net, caps, balance, out_left, in_left, amounts: vec![0; net.arcs.len()], steps: 0, budget, count: 0, visit };
    if (0..net.nodes).all(|v| search.open(v)) {
        search.run(0)?;
    }
    Ok(search.count)
}

/// Cheapest enumerated flow and its cost (first found among ties), or
/// `None` when no flow has finite cost.
pub fn oracle_flow(net: &FlowNetwork, budget: u64) -> Result<Option<(Vec<usize>, Cost)>, BudgetExceeded> {
    let mut best: Option<(Vec<usize>, Cost)> = None;
    enumerate_flows(net, budget, |f| {
        let mut total = Cost::ZERO;
        for (a, &x) in net.arcs.iter().zip(f) {
            total = total.checked_add(a.cost.at(x)).expect("small costs");
        }
        if total.is_finite() && best.as_ref().map_or(true, |(_, c)| total < *c) {
            best = Some((f.to_vec(), total));
        }
    })?;
    Ok(best)
}

/// `(lower, upper, unit cost)` when the arc's cost is `unit · f` on its
/// finite range.
pub fn linear_arc(values: &[Cost]) -> Option<(usize, usize, Rational)> {
    let l = values.iter().position(|c| c.is_finite())?;
    let u = values.iter().rposition(|c| c.is_finite())?;
    let at = |m: usize| values[m].as_ratio().expect("finite");
    let unit = if u > l { at(l + 1) - at(l) } else { if l == 0 { Rational::from_integer(0) } else { at(l) / Rational::from_integer(l as i64) } };
    (l..=u).all(|m| at(m) == unit * Rational::from_integer(m as i64)).then_some((l, u, unit))
}

struct Edge {
    to: usize,
    cap: i64,
    cost: Rational,
}

struct Graph {
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    fn add(&mut self, from: usize, to: usize, cap: i64, cost: Rational) -> usize {
        let k = self.edges.len();
        self.edges.push(Edge { to, cap, cost });
        self.edges.push(Edge { to: from, cap: 0, cost: -cost });
        self.adj[from].push(k);
        self.adj[to].push(k + 1);
        k
    }

    fn from(&self, e: usize) -> usize {
        self.edges[e ^ 1].to
    }

    /// Edmonds–Karp augmenting path.
    fn bfs_path(&self, s: usize, t: usize) -> Option<Vec<usize>> {
        let mut prev = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.adj[v] {
                let w = self.edges[e].to;
                if self.edges[e].cap > 0 && !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return None;
        }
        let mut path = Vec::new();
        let mut v = t;
        while let Some(e) = prev[v] {
            path.push(e);
            v = self.from(e);
        }
        Some(path)
    }

    /// A negative-cost residual cycle, by Bellman–Ford from a virtual root.
    fn negative_cycle(&self) -> Option<Vec<usize>> {
        let n = self.adj.len();
        let mut dist = vec![Rational::from_integer(0); n];
        let mut prev: Vec<Option<usize>> = vec![None; n];
        let mut last = None;
        for _ in 0..n {
            last = None;
            for (e, edge) in self.edges.iter().enumerate() {
                if edge.cap <= 0 {
                    continue;
                }
                let u = self.from(e);
                if dist[u] + edge.cost < dist[edge.to] {
                    dist[edge.to] = dist[u] + edge.cost;
                    prev[edge.to] = Some(e);
                    last = Some(edge.to);
                }
            }
            last?;
        }
        // Walk back n steps to land on the cycle.
        let mut v = last?;
        for _ in 0..n {
            v = self.from(prev[v].expect("relaxed"));
        }
        let start = v;
        let mut cycle = Vec::new();
        loop {
            let e = prev[v].expect("on cycle");
            cycle.push(e);
            v = self.from(e);
            if v == start {
                return Some(cycle);
            }
        }
    }

    fn push(&mut self, path: &[usize], amount: i64) {
        for &e in path {
            self.edges[e].cap -= amount;
            self.edges[e ^ 1].cap += amount;
        }
    }
}

/// Min-cost flow by max-flow feasibility and negative-cycle canceling, for
/// networks whose arcs all have linear costs. `None` if some arc is not
/// linear; `Some(None)` if no feasible flow exists.
pub fn reference_linear_flow(net: &FlowNetwork) -> Option<Option<(Vec<usize>, Cost)>> {
    let linear: Vec<(usize, usize, Rational)> = net.arcs.iter().map(|a| linear_arc(a.cost.values())).collect::<Option<_>>()?;
    let (ss, tt) = (net.nodes, net.nodes + 1);
    let mut g = Graph { edges: Vec::new(), adj: vec![Vec::new(); net.nodes + 2] };
    let mut excess = supplies(net);
    let mut arc_edge = Vec::new();
    for (a, &(l, u, unit)) in net.arcs.iter().zip(&linear) {
        excess[a.tail] -= l as i64;
        excess[a.head] += l as i64;
        arc_edge.push(g.add(a.tail, a.head, (u - l) as i64, unit));
    }
    let mut need = 0;
    let mut aux = Vec::new();
    for (v, &b) in excess.iter().enumerate() {
        if b > 0 {
            aux.push(g.add(ss, v, b, Rational::from_integer(0)));
            need += b;
        } else if b < 0 {
            aux.push(g.add(v, tt, -b, Rational::from_integer(0)));
        }
    }
    let mut sent = 0;
    while let Some(path) = g.bfs_path(ss, tt) {
        let amount = path.iter().map(|&e| g.edges[e].cap).min().expect("non-empty path");
        g.push(&path, amount);
        sent += amount;
    }
    if sent < need {
        return Some(None);
    }
    // Auxiliary arcs are saturated; freeze them before canceling.
    for e in aux {
        g.edges[e].cap = 0;
        g.edges[e ^ 1].cap = 0;
    }
    while let Some(cycle) = g.negative_cycle() {
        let amount = cycle.iter().map(|&e| g.edges[e].cap).min().expect("non-empty cycle");
        g.push(&cycle, amount);
    }
    let amounts: Vec<usize> = arc_edge.iter().zip(&linear).map(|(&e, &(l, _, _))| l + g.edges[e ^ 1].cap as usize).collect();
    let total = amounts.iter().zip(&linear).fold(Rational::from_integer(0), |acc, (&f, &(_, _, unit))| acc + unit * Rational::from_integer(f as i64));
    Some(Some((amounts, Cost::from_ratio(total).expect("non-negative total"))))
}
