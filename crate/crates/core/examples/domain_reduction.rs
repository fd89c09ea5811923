//! Instances whose sets touch at most two variables can be rewritten over
//! domains of size three; the optimum carries over.

use vcsp::cfc::reduce_domains_pairsets;
use vcsp::testkit::generators::gen_pairsets;
use vcsp::testkit::oracle::{oracle_count, oracle_evaluate_count};

fn main() {
    let inst = gen_pairsets(3, 5, 2).expect("generator");
    let (small, back) = reduce_domains_pairsets(&inst).expect("pair sets");
    println!("before: {} variables, domains {:?}", inst.n(), inst.domain_sizes());
    println!("after:  {} variables, domains {:?}", small.n(), small.domain_sizes());
    let after = oracle_count(&small, 1 << 22).expect("small");
    let x = back.apply(&after.assignment);
    println!("optimum {} maps back to {:?} costing {}", after.cost, x, oracle_evaluate_count(&inst, &x));
}
