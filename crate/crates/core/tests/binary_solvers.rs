use vcsp::binary::{
    dispatch, solve_lr_class, solve_matching_cardinality_class, solve_min0_class, solve_sac_class, solve_trivial_class,
    solve_weighted_matching_class, DispatchOptions, SolverError, SolverOptions,
};
use vcsp::cost::Cost;
use vcsp::model::BinaryInstance;
use vcsp::solution::SolveResult;
use vcsp::testkit::generators::{gen_matching_encoding, gen_maxcut, gen_profile};
use vcsp::testkit::oracle::{oracle_binary, oracle_evaluate_binary};
use vcsp::triangles::{Scheme, TripleType::*, TypeSet};

type Solver = fn(&BinaryInstance, SolverOptions) -> Result<SolveResult, SolverError>;

fn check_class(solver: Solver, scheme: Scheme, types: &[vcsp::triangles::TripleType], max_n: usize, count: u64) {
    let target = TypeSet::of(types);
    for seed in 0..count {
        let n = 1 + (seed as usize % max_n);
        let inst = gen_profile(n, 3, target, scheme, seed).unwrap();
        let got = solver(&inst, SolverOptions::default()).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        let want = oracle_binary(&inst, 1 << 20).unwrap();
        assert_eq!(got.cost, want.cost, "seed {seed}: {}", vcsp::format::write_binary(&inst));
        assert_eq!(oracle_evaluate_binary(&inst, &got.assignment), got.cost, "seed {seed}");
    }
}

#[test]
fn sac_class_matches_oracle() {
    check_class(solve_sac_class, Scheme::Csp, &[Greater, Zero, Inf], 7, 300);
}

#[test]
fn trivial_crisp_matches_oracle() {
    check_class(solve_trivial_class, Scheme::Csp, &[Less, Greater, Inf], 7, 300);
}

#[test]
fn trivial_ramsey_cells_match_oracle() {
    check_class(solve_trivial_class, Scheme::MaxCsp, &[Less, Greater], 5, 150);
    check_class(solve_trivial_class, Scheme::MaxM, &[Distinct, Less, Greater], 5, 150);
    check_class(solve_trivial_class, Scheme::Min0, &[Distinct, Less, Greater], 5, 150);
}

#[test]
fn lr_class_matches_oracle() {
    check_class(solve_lr_class, Scheme::MaxCsp, &[Greater, Zero], 7, 300);
}

#[test]
fn matching_cardinality_class_matches_oracle() {
    check_class(solve_matching_cardinality_class, Scheme::MaxCsp, &[Greater, One], 7, 300);
}

#[test]
fn min0_class_matches_oracle() {
    check_class(solve_min0_class, Scheme::Min0, &[Greater, Zero], 7, 300);
}

#[test]
fn weighted_matching_class_matches_oracle() {
    check_class(solve_weighted_matching_class, Scheme::MaxM, &[Greater, Top], 7, 300);
}

#[test]
fn lr_rejects_out_of_class_with_witness() {
    // {0,0,1} is a "<" triangle.
    let mut inst = BinaryInstance::uniform(3, 1);
    inst.set_binary(0, 1, vec![vec![Cost::ONE]]).unwrap();
    let err = solve_lr_class(&inst, SolverOptions::default()).unwrap_err();
    assert!(matches!(err, SolverError::ProfileViolation { witness: Some(_), .. }));
}

#[test]
fn lr_detects_bad_signature_without_profile_check() {
    let mut inst = BinaryInstance::uniform(3, 1);
    inst.set_binary(0, 1, vec![vec![Cost::ONE]]).unwrap();
    let err = solve_lr_class(&inst, SolverOptions { check_profile: false }).unwrap_err();
    match err {
        SolverError::ProfileViolation { witness: Some(w), .. } => assert_eq!(w.vars, [0, 1, 2]),
        e => panic!("unexpected {e}"),
    }
}

#[test]
fn matching_encoding_of_a_path() {
    // P3: 0 - 1 - 2 has a maximum matching of size one.
    let inst = gen_matching_encoding(3, &[(0, 1), (1, 2)]).unwrap();
    let r = solve_matching_cardinality_class(&inst, SolverOptions::default()).unwrap();
    assert_eq!(r.cost, Cost::int(2));
}

#[test]
fn matching_encoding_of_petersen() {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    let inst = gen_matching_encoding(10, &edges).unwrap();
    let r = solve_matching_cardinality_class(&inst, SolverOptions::default()).unwrap();
    // Perfect matching of size 5 on ten vertices.
    assert_eq!(r.cost, Cost::int(45 - 5));
    assert_eq!(r.certificate["matching_size"], 5);
}

#[test]
fn maxcut_of_pentagon() {
    let edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    let inst = gen_maxcut(5, &edges).unwrap();
    assert_eq!(oracle_binary(&inst, 1000).unwrap().cost, Cost::ONE);
    let p = vcsp::triangles::profile(&inst, Scheme::MaxCsp).unwrap();
    assert!(p.observed.is_subset(TypeSet::of(&[Less, Greater, Zero])));
}

#[test]
fn weighted_matching_identity_reported() {
    for seed in 0..50 {
        let inst = gen_profile(6, 3, TypeSet::of(&[Greater, Top]), Scheme::MaxM, seed).unwrap();
        let r = solve_weighted_matching_class(&inst, SolverOptions::default()).unwrap();
        assert_eq!(r.certificate["identity_holds"], true);
    }
}

#[test]
fn dispatch_is_deterministic_and_exact() {
    let schemes = [
        (Scheme::Csp, vec![Greater, Zero, Inf]),
        (Scheme::MaxCsp, vec![Greater, One]),
        (Scheme::MaxCsp, vec![Greater, Zero]),
        (Scheme::MaxM, vec![Greater, Top]),
        (Scheme::Min0, vec![Greater, Zero]),
        (Scheme::Order, vec![Less, Equal]),
    ];
    for (k, (scheme, types)) in schemes.iter().enumerate() {
        for seed in 0..40 {
            let inst = gen_profile(5, 3, TypeSet::of(types), *scheme, seed * 7 + k as u64).unwrap();
            let a = dispatch(&inst, DispatchOptions::default()).unwrap();
            let b = dispatch(&inst, DispatchOptions::default()).unwrap();
            assert_eq!(a, b);
            let r = a.result.unwrap();
            assert_eq!(r.cost, oracle_binary(&inst, 1 << 20).unwrap().cost);
        }
    }
}
