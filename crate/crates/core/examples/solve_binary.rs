//! Route binary instances through the dispatcher and compare with brute force.

use vcsp::binary::{dispatch, DispatchOptions};
use vcsp::testkit::generators::gen_profile;
use vcsp::testkit::oracle::oracle_binary;
use vcsp::triangles::{Scheme, TripleType::*, TypeSet};

fn main() {
    let cases = [
        // Random crisp tables are rarely satisfiable beyond a few variables.
        (Scheme::Csp, TypeSet::of(&[Greater, Zero, Inf]), 3, 12),
        (Scheme::MaxCsp, TypeSet::of(&[Greater, One]), 6, 11),
        (Scheme::MaxCsp, TypeSet::of(&[Greater, Zero]), 6, 12),
        (Scheme::Min0, TypeSet::of(&[Greater, Zero]), 6, 13),
        (Scheme::MaxM, TypeSet::of(&[Greater, Top]), 6, 14),
    ];
    for (scheme, target, n, seed) in cases {
        let inst = gen_profile(n, 3, target, scheme, seed).expect("generator");
        let out = dispatch(&inst, DispatchOptions::default()).expect("dispatch");
        let r = out.result.expect("tractable instance");
        let brute = oracle_binary(&inst, 1 << 20).expect("small instance");
        println!("{scheme:<7} {:?}: solver {} cost {} (oracle {})", target.members(scheme), r.solver, r.cost, brute.cost);
    }
}
