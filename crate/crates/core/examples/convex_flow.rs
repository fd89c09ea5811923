//! Minimum convex-cost flow on a small network, with the flow as DOT.

use vcsp::cost::Cost;
use vcsp::flow::{min_convex_cost_flow, Arc, FlowNetwork, FlowOutcome};
use vcsp::model::CountFunction;

fn table(values: &[u32]) -> CountFunction {
    CountFunction::new(values.iter().map(|&v| Cost::int(v)).collect()).expect("finite table")
}

fn main() {
    // s=0, a=1, b=2, t=3; ship 4 units.
    let mut net = FlowNetwork::new(4, 0, 3, 4);
    net.add_arc(Arc::new(0, 1, table(&[0, 1, 3, 6])));
    net.add_arc(Arc::new(0, 2, table(&[0, 2, 4, 6])));
    net.add_arc(Arc::linear(1, 3, 0, 3, Cost::ONE));
    net.add_arc(Arc::linear(2, 3, 1, 3, Cost::ZERO));
    net.add_arc(Arc::linear(1, 2, 0, 2, Cost::ONE));
    match min_convex_cost_flow(&net).expect("well-formed") {
        FlowOutcome::Optimal(f) => {
            println!("amounts {:?}, cost {}", f.amounts, f.cost);
            print!("{}", net.to_dot(Some(&f)));
        }
        FlowOutcome::Infeasible { .. } => println!("infeasible"),
    }
}
