//! Max-anchored instances reduce to maximum weight matching: the matching
//! weight plus the optimum equals the number of variable pairs times M.

use vcsp::binary::{solve_weighted_matching_class, SolverOptions};
use vcsp::testkit::generators::gen_profile;
use vcsp::triangles::{Scheme, TripleType::*, TypeSet};

fn main() {
    let inst = gen_profile(7, 3, TypeSet::of(&[Greater, Top]), Scheme::MaxM, 11).expect("generator");
    let r = solve_weighted_matching_class(&inst, SolverOptions::default()).expect("in class");
    println!("assignment {:?}, cost {}", r.assignment, r.cost);
    for key in ["M", "matching", "matching_weight", "unary_offset", "identity_holds"] {
        println!("  {key}: {}", r.certificate[key]);
    }
}
