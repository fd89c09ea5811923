use proptest::prelude::*;
use vcsp::cost::Cost;
use vcsp::flow::{expand_convex_arc, min_convex_cost_flow, Arc, FlowNetwork, FlowOutcome};
use vcsp::model::CountFunction;
use vcsp::testkit::flow_oracle::{enumerate_flows, oracle_flow, reference_linear_flow};
use vcsp::testkit::generators::{random_convex, random_network, rng};

const BUDGET: u64 = 2_000_000;

fn solve_cost(net: &FlowNetwork) -> Option<Cost> {
    match min_convex_cost_flow(net).unwrap() {
        FlowOutcome::Optimal(f) => {
            net.check_flow(&f.amounts).unwrap();
            assert_eq!(net.cost_of(&f.amounts).unwrap(), f.cost);
            Some(f.cost)
        }
        FlowOutcome::Infeasible { .. } => None,
    }
}

#[test]
fn convex_networks_match_enumeration() {
    let mut feasible = 0;
    for seed in 0..300 {
        let net = random_network(seed, 8, 14, 4, false);
        let expected = oracle_flow(&net, BUDGET).unwrap().map(|(_, c)| c);
        assert_eq!(solve_cost(&net), expected, "seed {seed}");
        feasible += usize::from(expected.is_some());
    }
    assert!(feasible > 60, "too few feasible networks: {feasible}");
}

#[test]
fn linear_networks_match_cycle_canceling() {
    for seed in 0..300 {
        let net = random_network(1000 + seed, 10, 20, 6, true);
        let reference = reference_linear_flow(&net).expect("linear arcs").map(|(_, c)| c);
        assert_eq!(solve_cost(&net), reference, "seed {seed}");
    }
}

#[test]
fn identical_networks_give_identical_flows() {
    for seed in 0..20 {
        let net = random_network(seed, 8, 14, 4, false);
        assert_eq!(min_convex_cost_flow(&net).unwrap(), min_convex_cost_flow(&net).unwrap());
    }
}

#[test]
fn enumeration_counts_flows_of_a_path() {
    // s → a → t, capacity 3 each, value 2: exactly one flow.
    let mut net = FlowNetwork::new(3, 0, 2, 2);
    net.add_arc(Arc::linear(0, 1, 0, 3, Cost::ONE));
    net.add_arc(Arc::linear(1, 2, 0, 3, Cost::ONE));
    assert_eq!(enumerate_flows(&net, 100, |f| assert_eq!(f, [2, 2])).unwrap(), 1);
}

proptest! {
    #[test]
    fn marginals_resum_to_the_table(seed in 0u64..10_000, cap in 1usize..6) {
        let g = random_convex(&mut rng(seed), cap);
        let arc = Arc::new(0, 1, g.clone());
        match expand_convex_arc(&arc).unwrap() {
            None => prop_assert!(g.support().is_none()),
            Some(x) => {
                let (l, u) = g.support().unwrap();
                prop_assert_eq!(x.forced, l);
                prop_assert_eq!(x.base, g.at(l));
                prop_assert_eq!(x.marginals.len(), u - l);
                prop_assert!(x.marginals.windows(2).all(|w| w[0] <= w[1]));
                let mut total = g.at(l).as_ratio().unwrap();
                for (k, m) in x.marginals.iter().enumerate() {
                    total += *m;
                    prop_assert_eq!(Some(total), g.at(l + k + 1).as_ratio());
                }
            }
        }
    }

    #[test]
    fn single_arc_costs_its_table(cap in 1usize..6, value in 0usize..6, seed in 0u64..1000) {
        let g = random_convex(&mut rng(seed), cap);
        let mut net = FlowNetwork::new(2, 0, 1, value);
        net.add_arc(Arc::new(0, 1, g.clone()));
        let expected = g.at(value);
        let got = solve_cost(&net);
        prop_assert_eq!(got, expected.is_finite().then_some(expected));
    }
}

#[test]
fn infeasible_cost_table_is_reported() {
    let mut net = FlowNetwork::new(2, 0, 1, 1);
    net.add_arc(Arc::new(0, 1, CountFunction::new(vec![Cost::INF, Cost::INF]).unwrap()));
    assert!(matches!(min_convex_cost_flow(&net).unwrap(), FlowOutcome::Infeasible { witness: Some(0) }));
}
