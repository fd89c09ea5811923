//! Write a few generated instances in the JSON interchange format.

use vcsp::format::{write_binary, write_count};
use vcsp::testkit::generators::{gen_crossfree, gen_full_laminar, gen_maxcut};

fn main() {
    let pentagon = gen_maxcut(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).expect("graph");
    println!("{}", write_binary(&pentagon));
    println!("{}", write_count(&gen_crossfree(3, 2, 1).expect("generator")));
    let tree = gen_full_laminar(8, 2, 0).expect("generator");
    println!("full laminar tree: {} variables, {} sets", tree.n(), tree.sets().len());
}
