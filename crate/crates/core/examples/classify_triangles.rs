//! Profile a generated instance under every applicable scheme and print the
//! dichotomy verdicts.

use vcsp::testkit::generators::gen_profile;
use vcsp::triangles::{has_soft_unaries, profile, verdict, Scheme, TripleType::*, TypeSet};

fn main() {
    let inst = gen_profile(6, 3, TypeSet::of(&[Greater, Zero]), Scheme::MaxCsp, 7).expect("generator");
    for scheme in Scheme::ALL {
        let Ok(p) = profile(&inst, scheme) else {
            println!("{scheme:<7}: costs outside the scheme's range");
            continue;
        };
        let ruling = verdict(&p, inst.domain_max(), has_soft_unaries(&inst));
        println!("{scheme:<7}: observed {:?} -> {} ({})", p.symbols(), ruling.verdict.label(), ruling.rule);
    }
}
