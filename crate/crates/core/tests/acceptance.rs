//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use vcsp::binary::{
    solve_lr_class, solve_matching_cardinality_class, solve_min0_class, solve_sac_class, solve_trivial_class,
    solve_weighted_matching_class, SolverError, SolverOptions,
};
use vcsp::cfc::{check_instance_family, crossfree_to_laminar, reduce_domains_pairsets, solve_cfc, FamilyKind};
use vcsp::cost::Cost;
use vcsp::flow::{min_convex_cost_flow, FlowNetwork, FlowOutcome};
use vcsp::model::{BinaryInstance, Variable};
use vcsp::renaming::{recognize_renamable, solve_renamable, Renamability};
use vcsp::solution::SolveResult;
use vcsp::testkit::fixtures::fixture;
use vcsp::testkit::flow_oracle::{oracle_flow, reference_linear_flow};
use vcsp::testkit::generators::{
    gen_crossfree, gen_full_laminar, gen_laminar, gen_pairsets, gen_profile, gen_renamable, random_network, rng,
};
use vcsp::testkit::oracle::{all_count_values, oracle_binary, oracle_count, oracle_evaluate_binary, oracle_evaluate_count};
use vcsp::triangles::{profile, verdict_for, Scheme, SolverId, TripleType, TripleType::*, TypeSet, Verdict};

const BUDGET: u64 = 2_000_000;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

type Solver = fn(&BinaryInstance, SolverOptions) -> Result<SolveResult, SolverError>;

fn binary_class(solver: Solver, scheme: Scheme, types: &[TripleType], max_n: usize, count: u64, salt: u64) -> Result<u64, String> {
    let target = TypeSet::of(types);
    for seed in 0..count {
        let n = 1 + (seed as usize % max_n);
        let d = 2 + (seed as usize % 2);
        let inst = gen_profile(n, d, target, scheme, salt + seed).map_err(|e| e.to_string())?;
        let got = solver(&inst, SolverOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let want = oracle_binary(&inst, BUDGET).map_err(|e| e.to_string())?;
        ensure!(got.cost == want.cost, "{scheme} {types:?} seed {seed}: solver {} vs oracle {}", got.cost, want.cost);
        ensure!(oracle_evaluate_binary(&inst, &got.assignment) == got.cost, "{scheme} seed {seed}: assignment re-evaluates differently");
    }
    Ok(count)
}

fn binary_solvers() -> Outcome {
    let start = Instant::now();
    let mut counts = Vec::new();
    counts.push(("sac", binary_class(solve_sac_class, Scheme::Csp, &[Greater, Zero, Inf], 7, 300, 0)?));
    let trivial = binary_class(solve_trivial_class, Scheme::Csp, &[Less, Greater, Inf], 7, 150, 1_000)?
        + binary_class(solve_trivial_class, Scheme::MaxCsp, &[Less, Greater], 5, 100, 2_000)?
        + binary_class(solve_trivial_class, Scheme::Min0, &[Distinct, Less, Greater], 5, 100, 3_000)?
        + binary_class(solve_trivial_class, Scheme::MaxM, &[Distinct, Less, Greater], 5, 100, 4_000)?;
    counts.push(("trivial", trivial));
    counts.push(("lr", binary_class(solve_lr_class, Scheme::MaxCsp, &[Greater, Zero], 7, 300, 5_000)?));
    counts.push(("matching-cardinality", binary_class(solve_matching_cardinality_class, Scheme::MaxCsp, &[Greater, One], 7, 300, 6_000)?));
    counts.push(("min0", binary_class(solve_min0_class, Scheme::Min0, &[Greater, Zero], 7, 300, 7_000)?));
    counts.push(("weighted-matching", binary_class(solve_weighted_matching_class, Scheme::MaxM, &[Greater, Top], 7, 300, 8_000)?));
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    let summary: Vec<String> = counts.iter().map(|(id, k)| format!("{id}={k}")).collect();
    Ok(format!("{} in {elapsed:.2?}", summary.join(" ")))
}

fn cfc_oracle() -> Outcome {
    let start = Instant::now();
    let mut crossing = 0;
    for (k, seed) in (0..1000u64).enumerate() {
        let laminar = k < 500;
        let n = 1 + (seed as usize % 8);
        let inst = if laminar { gen_laminar(n, 3, seed) } else { gen_crossfree(n, 3, 10_000 + seed) }.map_err(|e| e.to_string())?;
        let kind = check_instance_family(&inst).kind;
        ensure!(kind != FamilyKind::Neither, "seed {seed}: generator produced a crossing family");
        ensure!(!laminar || kind == FamilyKind::Laminar, "seed {seed}: laminar generator produced {kind:?}");
        crossing += usize::from(kind == FamilyKind::CrossFree);
        let got = solve_cfc(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let want = oracle_count(&inst, BUDGET).map_err(|e| e.to_string())?;
        ensure!(got.cost == want.cost, "seed {seed}: cfc {} vs oracle {}", got.cost, want.cost);
        ensure!(oracle_evaluate_count(&inst, &got.assignment) == got.cost, "seed {seed}: assignment re-evaluates differently");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("500 laminar + 500 cross-free ({crossing} truly crossing) in {elapsed:.2?}"))
}

fn matching_identity() -> Outcome {
    let mut solved = 0;
    for seed in 0..300u64 {
        let n = 2 + (seed as usize % 6);
        let inst = gen_profile(n, 3, TypeSet::of(&[Greater, Top]), Scheme::MaxM, 90_000 + seed).map_err(|e| e.to_string())?;
        let r = solve_weighted_matching_class(&inst, SolverOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let num = |key: &str| -> Result<Cost, String> {
            r.certificate[key].as_str().ok_or(format!("missing {key}"))?.parse::<Cost>().map_err(|e| format!("{key}: {e:?}"))
        };
        let (big_m, weight, offset) = (num("M")?, num("matching_weight")?, num("unary_offset")?);
        let pairs = (n * (n - 1) / 2) as u64;
        let lhs = weight.checked_add(r.cost.checked_sub(offset).unwrap()).unwrap();
        ensure!(lhs == big_m.checked_mul_int(pairs).unwrap(), "seed {seed}: {weight} + cost != C({n},2)·{big_m}");
        ensure!(r.cost == oracle_binary(&inst, BUDGET).unwrap().cost, "seed {seed}: not optimal");
        solved += 1;
    }
    Ok(format!("identity exact on {solved} instances"))
}

fn ramsey() -> Outcome {
    let mut r = rng(0x5eed);
    let mut monochromatic = 0;
    for trial in 0..1000 {
        let vars: Vec<Variable> = (0..6).map(|i| Variable::indexed(format!("x{i}"), 1)).collect();
        let mut inst = BinaryInstance::new(vars).unwrap();
        let mut colour = [[0u32; 6]; 6];
        for i in 0..6 {
            for j in i + 1..6 {
                let c = rand::Rng::gen_range(&mut r, 0..=1u32);
                colour[i][j] = c;
                inst.set_binary(i, j, vec![vec![Cost::int(c)]]).unwrap();
            }
        }
        let p = profile(&inst, Scheme::MaxCsp).map_err(|e| e.to_string())?;
        ensure!(!p.observed.is_subset(TypeSet::of(&[Less, Greater])), "trial {trial}: no monochromatic triangle");
        let mono = (0..6).any(|i| {
            (i + 1..6).any(|j| (j + 1..6).any(|k| colour[i][j] == colour[i][k] && colour[i][k] == colour[j][k]))
        });
        monochromatic += usize::from(mono);
    }
    ensure!(monochromatic == 1000, "direct scan found {monochromatic} monochromatic instances");
    Ok("1000 instances, 0 counterexamples".into())
}

fn laminarisation() -> Outcome {
    let mut points = 0;
    for seed in 0..200u64 {
        let inst = gen_crossfree(1 + (seed as usize % 6), 3, 20_000 + seed).map_err(|e| e.to_string())?;
        let lam = crossfree_to_laminar(&inst).map_err(|e| e.to_string())?;
        ensure!(check_instance_family(&lam).kind == FamilyKind::Laminar, "seed {seed}: result not laminar");
        for (x, v) in all_count_values(&inst) {
            ensure!(oracle_evaluate_count(&lam, &x) == v, "seed {seed}: deviation at {x:?}");
            points += 1;
        }
    }
    Ok(format!("200 instances, {points} points, 0 deviations"))
}

fn domain_reduction() -> Outcome {
    let mut reduced = 0;
    for seed in 0..100u64 {
        let inst = gen_pairsets(1 + (seed as usize % 3), 5, 50_000 + seed).map_err(|e| e.to_string())?;
        let (small, back) = reduce_domains_pairsets(&inst).map_err(|e| e.to_string())?;
        ensure!(small.domain_sizes().iter().all(|&k| k <= 3), "seed {seed}: domain above 3 survives");
        reduced += usize::from(small.n() > inst.n());
        let before = oracle_count(&inst, BUDGET).map_err(|e| e.to_string())?;
        let after = oracle_count(&small, BUDGET).map_err(|e| e.to_string())?;
        ensure!(before.cost == after.cost, "seed {seed}: {} before, {} after", before.cost, after.cost);
        let x = back.apply(&after.assignment);
        ensure!(oracle_evaluate_count(&inst, &x) == after.cost, "seed {seed}: back-mapped solution re-evaluates differently");
    }
    Ok(format!("100 instances ({reduced} with domains actually reduced)"))
}

fn renaming() -> Outcome {
    let inst = fixture("maxsat-renamable").ok_or("missing fixture")?;
    let Renamability::Renamable { renamed, .. } = recognize_renamable(&inst).map_err(|e| e.to_string())? else {
        return Err("maxsat-renamable not recognised".into());
    };
    ensure!(renamed == [false, true, false, false], "renaming vector {renamed:?}");
    let r = solve_renamable(&inst).map_err(|e| e.to_string())?;
    ensure!(r.cost == Cost::ZERO, "MAX-SAT cost {}", r.cost);
    ensure!(oracle_count(&inst, BUDGET).unwrap().cost == Cost::ZERO, "oracle disagrees");
    let overlap = fixture("nested-sat-overlap").ok_or("missing fixture")?;
    ensure!(
        matches!(recognize_renamable(&overlap).map_err(|e| e.to_string())?, Renamability::NotRenamable { .. }),
        "nested-sat-overlap recognised as renamable"
    );
    for seed in 0..200u64 {
        let inst = gen_renamable(2 + (seed as usize % 6), seed).map_err(|e| e.to_string())?;
        let got = solve_renamable(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        let want = oracle_count(&inst, BUDGET).map_err(|e| e.to_string())?;
        ensure!(got.cost == want.cost, "seed {seed}: {} vs oracle {}", got.cost, want.cost);
    }
    Ok("fixtures as expected, 200 random instances match".into())
}

/// Hardness conditions of each scheme, written out independently of `verdict_for`.
fn hard(scheme: Scheme, s: TypeSet) -> bool {
    let has = |types: &[TripleType]| s.is_superset_of(types);
    let within = |types: &[TripleType]| s.is_subset(TypeSet::of(types));
    match scheme {
        Scheme::Csp => has(&[Less, Greater, Zero]),
        Scheme::MaxCsp => has(&[Less, Greater, Zero]) || has(&[Less, Greater, One]) || has(&[Greater, Zero, One]),
        Scheme::Order => !within(&[Less, Equal]),
        Scheme::Min0 => !(within(&[Less, Zero]) || within(&[Greater, Zero]) || within(&[Distinct, Less, Greater])),
        Scheme::MaxM => !(within(&[Less, Top]) || within(&[Greater, Top]) || within(&[Distinct, Less, Greater])),
    }
}

/// Classes the implemented solvers cover.
fn solver_classes() -> Vec<(SolverId, Scheme, TypeSet)> {
    vec![
        (SolverId::Sac, Scheme::Csp, TypeSet::of(&[Greater, Zero, Inf])),
        (SolverId::Trivial, Scheme::Csp, TypeSet::of(&[Less, Greater, Inf])),
        (SolverId::Trivial, Scheme::MaxCsp, TypeSet::of(&[Less, Greater])),
        (SolverId::Trivial, Scheme::Min0, TypeSet::of(&[Distinct, Less, Greater])),
        (SolverId::Trivial, Scheme::MaxM, TypeSet::of(&[Distinct, Less, Greater])),
        (SolverId::Lr, Scheme::MaxCsp, TypeSet::of(&[Greater, Zero])),
        (SolverId::MatchingCardinality, Scheme::MaxCsp, TypeSet::of(&[Greater, One])),
        (SolverId::Min0, Scheme::Min0, TypeSet::of(&[Greater, Zero])),
        (SolverId::WeightedMatching, Scheme::MaxM, TypeSet::of(&[Greater, Top])),
    ]
}

/// Tractable cells covered by the joint-winner property but not solved here.
fn jwp_cell(scheme: Scheme) -> TypeSet {
    match scheme {
        Scheme::Csp => TypeSet::of(&[Less, Zero, Inf]),
        Scheme::MaxCsp => TypeSet::of(&[Less, Zero, One]),
        Scheme::Order => TypeSet::of(&[Less, Equal]),
        Scheme::Min0 => TypeSet::of(&[Less, Zero]),
        Scheme::MaxM => TypeSet::of(&[Less, Top]),
    }
}

fn dichotomy() -> Outcome {
    let classes = solver_classes();
    let mut cells = 0;
    for scheme in Scheme::ALL {
        // (domain_max, soft unaries): CSP is checked crisp on three values
        // and with soft unaries on Boolean domains.
        let settings: &[(usize, bool)] = if scheme == Scheme::Csp { &[(3, false), (2, true), (3, true)] } else { &[(3, true)] };
        for &(dmax, soft) in settings {
            for s in TypeSet::all_subsets(scheme) {
                cells += 1;
                let got = verdict_for(scheme, s, dmax, soft).verdict;
                let label = format!("{scheme} {:?} d={dmax} soft={soft}: {}", s.members(scheme), got.label());
                let covering: Vec<SolverId> =
                    classes.iter().filter(|(_, sc, set)| *sc == scheme && s.is_subset(*set)).map(|(id, _, _)| *id).collect();
                match got {
                    Verdict::NpHard => ensure!(hard(scheme, s), "{label}: should be tractable"),
                    Verdict::Tractable(id) => {
                        ensure!(!hard(scheme, s), "{label}: should be NP-hard");
                        ensure!(covering.contains(&id), "{label}: solver does not cover the set");
                    }
                    Verdict::TractableUnimplemented => {
                        ensure!(!hard(scheme, s), "{label}: should be NP-hard");
                        ensure!(covering.is_empty(), "{label}: an implemented solver covers the set");
                        ensure!(s.is_subset(jwp_cell(scheme)), "{label}: outside the joint-winner cell");
                    }
                    Verdict::TrivialSmallDomain => return Err(format!("{label}: unexpected small-domain verdict")),
                }
            }
        }
        for s in TypeSet::all_subsets(scheme) {
            cells += 1;
            ensure!(verdict_for(scheme, s, 1, true).verdict == Verdict::TrivialSmallDomain, "{scheme}: single values not trivial");
        }
    }
    for s in TypeSet::all_subsets(Scheme::Csp) {
        cells += 1;
        ensure!(verdict_for(Scheme::Csp, s, 2, false).verdict == Verdict::TrivialSmallDomain, "crisp Boolean CSP not trivial");
    }
    Ok(format!("{cells} (scheme, subset, setting) cells agree"))
}

fn scaling() -> Outcome {
    let mut times = Vec::new();
    for n in [25usize, 50, 100, 200] {
        let inst = gen_full_laminar(n, 4, n as u64).map_err(|e| e.to_string())?;
        // Best of three runs damps scheduler noise.
        let mut best = Duration::MAX;
        for _ in 0..3 {
            let start = Instant::now();
            let r = solve_cfc(&inst).map_err(|e| format!("n={n}: {e}"))?;
            best = best.min(start.elapsed());
            ensure!(oracle_evaluate_count(&inst, &r.assignment) == r.cost, "n={n}: assignment re-evaluates differently");
        }
        ensure!(best < Duration::from_secs(2), "n={n} took {best:?}");
        times.push((n, best));
    }
    let mut parts = Vec::new();
    for w in times.windows(2) {
        let ratio = w[1].1.as_secs_f64() / w[0].1.as_secs_f64();
        ensure!(ratio < 8.0, "growth {ratio:.2}x from n={} to n={}", w[0].0, w[1].0);
        parts.push(format!("{:.2}x", ratio));
    }
    let shown: Vec<String> = times.iter().map(|(n, t)| format!("n={n}:{t:.2?}")).collect();
    Ok(format!("{} growth {}", shown.join(" "), parts.join(",")))
}

fn flow_cost(net: &FlowNetwork) -> Result<Option<Cost>, String> {
    match min_convex_cost_flow(net).map_err(|e| e.to_string())? {
        FlowOutcome::Optimal(f) => {
            net.check_flow(&f.amounts).map_err(|e| e.to_string())?;
            Ok(Some(f.cost))
        }
        FlowOutcome::Infeasible { .. } => Ok(None),
    }
}

fn flow_engine() -> Outcome {
    let mut feasible = 0;
    for seed in 0..200u64 {
        let net = random_network(seed, 8, 14, 4, false);
        let want = oracle_flow(&net, BUDGET).map_err(|e| e.to_string())?.map(|(_, c)| c);
        ensure!(flow_cost(&net)? == want, "convex seed {seed}");
        feasible += usize::from(want.is_some());
    }
    for seed in 0..200u64 {
        let net = random_network(1000 + seed, 10, 20, 6, true);
        let want = reference_linear_flow(&net).ok_or("non-linear arc")?.map(|(_, c)| c);
        ensure!(flow_cost(&net)? == want, "linear seed {seed}");
    }
    Ok(format!("200 convex ({feasible} feasible) + 200 linear networks"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("binary solvers match the exhaustive oracle", binary_solvers),
        ("cross-free convex solver matches the oracle", cfc_oracle),
        ("matching identity on max-anchored instances", matching_identity),
        ("monochromatic triangle on six variables", ramsey),
        ("laminarisation preserves the objective pointwise", laminarisation),
        ("pair-set domain reduction preserves the optimum", domain_reduction),
        ("renaming recognition and solving", renaming),
        ("dichotomy verdict table", dichotomy),
        ("scaling on full laminar trees", scaling),
        ("flow engine against enumeration and reference", flow_engine),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
