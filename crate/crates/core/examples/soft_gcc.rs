//! Soft global cardinality constraints, flat and nested, solved exactly.

use vcsp::cfc::solve_cfc;
use vcsp::testkit::generators::{gen_nested_gcc, gen_soft_gcc};

fn main() {
    // Six variables over three values; each value wants one or two users,
    // except value 2, which wants none.
    let flat = gen_soft_gcc(6, 3, &[(1, 2), (1, 2), (0, 0)]).expect("generator");
    let r = solve_cfc(&flat).expect("laminar");
    println!("flat:   {:?} violation {}", r.assignment, r.cost);

    let groups = vec![vec![0, 1, 2, 3, 4, 5], vec![0, 1, 2], vec![3, 4]];
    let bounds = vec![vec![(3, 6), (0, 3)], vec![(0, 0), (3, 3)], vec![(2, 2), (0, 0)]];
    let nested = gen_nested_gcc(6, 2, &groups, &bounds).expect("generator");
    let r = solve_cfc(&nested).expect("laminar");
    println!("nested: {:?} violation {}", r.assignment, r.cost);
    println!("network {}", r.certificate["network"]);
}
