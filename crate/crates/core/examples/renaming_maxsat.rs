//! A MAX-SAT instance whose clauses cross becomes cross-free after flipping
//! one clause. A tangled instance is refused.

use vcsp::renaming::{recognize_renamable, solve_renamable, Renamability};
use vcsp::testkit::fixtures::fixture;

fn main() {
    for name in ["maxsat-renamable", "nested-sat-overlap"] {
        let inst = fixture(name).expect("bundled fixture");
        match recognize_renamable(&inst).expect("boolean instance") {
            Renamability::Renamable { renamed, .. } => {
                let r = solve_renamable(&inst).expect("renamable");
                println!("{name}: renamed {renamed:?}, optimum {} at {:?}", r.cost, r.assignment);
            }
            Renamability::NotRenamable { reason } => println!("{name}: not renamable ({reason})"),
        }
    }
}
