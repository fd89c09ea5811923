//! One solver per implemented tractable class. Every solver rebuilds the
//! assignment it claims, re-evaluates it on the input instance and fails
//! loudly if the two costs differ.

use serde_json::json;

use super::consistency::{require_crisp, singleton_arc_consistency};
use super::matching::{max_cardinality_matching, max_weight_matching, MatchingGraph};
use super::{SolverError, SolverOptions};
use crate::cost::{Cost, Scale};
use crate::model::BinaryInstance;
use crate::renaming::twosat::{Lit, TwoSat};
use crate::solution::SolveResult;
use crate::triangles::{profile, Scheme, Triangle, TripleType, TypeSet};

fn pairs(n: usize) -> u64 {
    (n * n.saturating_sub(1) / 2) as u64
}

/// Verifies the claimed cost against a fresh evaluation.
fn finish(solver: &'static str, inst: &BinaryInstance, x: Vec<usize>, claimed: Cost) -> Result<SolveResult, SolverError> {
    let actual = inst.evaluate(&x)?;
    if actual != claimed {
        return Err(SolverError::Invariant {
            solver,
            detail: format!("assignment {x:?} evaluates to {actual}, solver derived {claimed}"),
        });
    }
    Ok(SolveResult::new(solver, x, actual))
}

/// Rejects the instance unless its profile under `scheme` lies in `allowed`.
fn require_profile(
    solver: &'static str,
    inst: &BinaryInstance,
    scheme: Scheme,
    allowed: &[TripleType],
) -> Result<(), SolverError> {
    let p = profile(inst, scheme)?;
    let ok = TypeSet::of(allowed);
    if p.observed.is_subset(ok) {
        return Ok(());
    }
    let (t, w) = p.witnesses.iter().find(|(t, _)| !ok.contains(*t)).expect("some type outside the class");
    Err(SolverError::ProfileViolation {
        solver,
        detail: format!("triangle of type {} under scheme {}", t.symbol(scheme), scheme),
        witness: Some(*w),
    })
}

/// Value of minimum unary cost among `candidates`, first index on ties.
fn argmin_unary(inst: &BinaryInstance, i: usize, candidates: impl Iterator<Item = usize>) -> Option<(usize, Cost)> {
    let mut best: Option<(usize, Cost)> = None;
    for b in candidates {
        let c = inst.unary(i, b);
        if best.map_or(true, |(_, bc)| c < bc) {
            best = Some((b, c));
        }
    }
    best
}

/// Lexicographically smallest optimum by full enumeration; only used on
/// instances the class guarantees to be tiny.
fn enumerate(inst: &BinaryInstance) -> Result<(Vec<usize>, Cost), SolverError> {
    let sizes = inst.domain_sizes();
    let mut x = vec![0; sizes.len()];
    let mut best = (x.clone(), inst.evaluate(&x)?);
    loop {
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return Ok(best);
            }
            pos -= 1;
            x[pos] += 1;
            if x[pos] < sizes[pos] {
                break;
            }
            x[pos] = 0;
        }
        let c = inst.evaluate(&x)?;
        if c < best.1 {
            best = (x.clone(), c);
        }
    }
}

/// Crisp binaries with triangles in `{>, 0, ∞}`, arbitrary unaries: after
/// singleton arc consistency, any values compatible with the first
/// variable's value are pairwise compatible, so each remaining variable
/// independently takes its cheapest compatible value.
pub fn solve_sac_class(inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    const ID: &str = "sac";
    use TripleType::*;
    require_crisp(inst)?;
    if opts.check_profile {
        require_profile(ID, inst, Scheme::Csp, &[Greater, Zero, Inf])?;
    }
    let n = inst.n();
    if n == 0 {
        return finish(ID, inst, Vec::new(), Cost::ZERO);
    }
    let d = singleton_arc_consistency(inst)?;
    let pruned = d.removed();
    if d.wiped_out.is_some() {
        let r = finish(ID, inst, vec![0; n], Cost::INF)?;
        return Ok(r.note("pruned_values", pruned).note("wiped_out", true));
    }
    let mut best: Option<(Vec<usize>, Cost)> = None;
    for a1 in d.values(0) {
        let mut x = vec![0; n];
        x[0] = a1;
        let mut total = inst.unary(0, a1);
        for i in 1..n {
            let compatible = d.values(i).filter(|&b| inst.binary(0, a1, i, b).is_zero());
            match argmin_unary(inst, i, compatible) {
                Some((b, c)) => {
                    x[i] = b;
                    total = total.checked_add(c)?;
                }
                None => total = Cost::INF,
            }
        }
        if best.as_ref().map_or(true, |(_, c)| total < *c) {
            best = Some((x, total));
        }
    }
    let (x, cost) = best.expect("first domain survives");
    let first = x[0];
    Ok(finish(ID, inst, x, cost)?.note("pruned_values", pruned).note("first_value", first))
}

/// Classes whose instances have no finite solution once `n ≥ 3` (crisp
/// `{<, >, ∞}`) or at most five variables (Ramsey-bounded cells).
pub fn solve_trivial_class(inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    const ID: &str = "trivial";
    use TripleType::*;
    let n = inst.n();
    let crisp = inst.binaries_crisp();
    let unit = inst.binary_tables().all(|(_, _, t)| t.entries().iter().all(|c| c.is_zero() || *c == Cost::ONE));
    if crisp && n >= 3 {
        // The empty-set-of-zero-triangles argument needs the crisp profile itself.
        require_profile(ID, inst, Scheme::Csp, &[Less, Greater, Inf])?;
        return Ok(finish(ID, inst, vec![0; n], Cost::INF)?.note("reason", "every triangle has an infinite cost"));
    }
    if opts.check_profile && n >= 3 {
        let mut cells: Vec<(Scheme, &[TripleType])> =
            vec![(Scheme::MaxM, &[Distinct, Less, Greater]), (Scheme::Min0, &[Distinct, Less, Greater])];
        if unit {
            cells.insert(0, (Scheme::MaxCsp, &[Less, Greater]));
        }
        let mut last = None;
        for (scheme, allowed) in cells {
            match require_profile(ID, inst, scheme, allowed) {
                Ok(()) => {
                    last = None;
                    break;
                }
                Err(e) => last = Some(e),
            }
        }
        if let Some(e) = last {
            return Err(e);
        }
    }
    if n > 5 {
        return Err(SolverError::ProfileViolation {
            solver: ID,
            detail: format!("{n} variables; the class admits at most five"),
            witness: None,
        });
    }
    let (x, c) = enumerate(inst)?;
    Ok(finish(ID, inst, x, c)?.note("enumerated", true))
}

/// Per-variable side data for the L/R decomposition, in scaled integers.
struct Side {
    value: usize,
    cost: Option<i128>,
}

struct LrBest {
    total: Option<i128>,
    x: Vec<usize>,
    case_one: bool,
    left_count: usize,
    endpoint: bool,
}

/// Core of the `{>, 0}` Max-CSP algorithm with arbitrary unaries. For each
/// pair of values of the first two variables the remaining assignments
/// split into two sides L and R; the binary cost then depends only on the
/// number `k` of variables taking an L value. All feasible `k` are scanned
/// exactly after sorting the per-variable unary differences.
fn lr_core(id: &'static str, inst: &BinaryInstance, unit_unaries: bool) -> Result<SolveResult, SolverError> {
    let n = inst.n();
    for (i, j, t) in inst.binary_tables() {
        if let Some(c) = t.entries().iter().find(|c| !(c.is_zero() || **c == Cost::ONE)) {
            return Err(SolverError::ProfileViolation {
                solver: id,
                detail: format!("binary cost {c} on pair ({i},{j}) is not 0 or 1"),
                witness: None,
            });
        }
    }
    if n <= 2 {
        let (x, c) = enumerate(inst)?;
        return Ok(finish(id, inst, x, c)?.note("enumerated", true));
    }
    let scale = Scale::for_costs((0..n).flat_map(|i| (0..inst.domain_size(i)).map(move |a| (i, a))).map(|(i, a)| inst.unary(i, a)))?;
    let unit = i128::from(scale.denominator());
    let su = |i: usize, a: usize| -> Result<Option<i128>, SolverError> { Ok(scale.to_int(inst.unary(i, a))?.map(i128::from)) };
    let add = |a: Option<i128>, b: Option<i128>| a.zip(b).map(|(x, y)| x + y);

    let mut best = LrBest { total: None, x: vec![0; n], case_one: false, left_count: 0, endpoint: true };
    let mut have_best = false;
    for a1 in 0..inst.domain_size(0) {
        for a2 in 0..inst.domain_size(1) {
            let c12 = inst.binary(0, a1, 1, a2);
            let case_one = c12 == Cost::ONE;
            // (L, R) signatures and the edge cost to v1, v2 of each side.
            let (sig_l, sig_r, edge_l, edge_r) =
                if case_one { ((true, false), (false, true), 1, 1) } else { ((false, false), (true, true), 0, 2) };
            let mut base = add(su(0, a1)?, su(1, a2)?).map(|b| b + if case_one { unit } else { 0 });
            let mut x = vec![0; n];
            x[0] = a1;
            x[1] = a2;
            let (mut forced_l, mut forced_r) = (0usize, 0usize);
            let mut free: Vec<(usize, Side, Side)> = Vec::new();
            for i in 2..n {
                let mut left = Side { value: 0, cost: None };
                let mut right = Side { value: 0, cost: None };
                let (mut has_l, mut has_r) = (false, false);
                for b in 0..inst.domain_size(i) {
                    let sig = (inst.binary(0, a1, i, b) == Cost::ONE, inst.binary(1, a2, i, b) == Cost::ONE);
                    let (side, has) = if sig == sig_l {
                        (&mut left, &mut has_l)
                    } else if sig == sig_r {
                        (&mut right, &mut has_r)
                    } else {
                        let costs = [c12, inst.binary(0, a1, i, b), inst.binary(1, a2, i, b)];
                        return Err(SolverError::ProfileViolation {
                            solver: id,
                            detail: format!("value {b} of variable {i} is on neither side"),
                            witness: Some(Triangle { vars: [0, 1, i], values: [a1, a2, b], costs }),
                        });
                    };
                    let c = su(i, b)?;
                    let better = match (side.cost, c) {
                        (_, None) => !*has,
                        (None, Some(_)) => true,
                        (Some(old), Some(new)) => new < old,
                    };
                    if better {
                        side.value = b;
                        side.cost = c;
                    }
                    *has = true;
                }
                let lc = left.cost.map(|c| c + edge_l * unit);
                let rc = right.cost.map(|c| c + edge_r * unit);
                match (has_l && lc.is_some(), has_r && rc.is_some()) {
                    (true, true) => free.push((i, Side { value: left.value, cost: lc }, Side { value: right.value, cost: rc })),
                    (true, false) => {
                        forced_l += 1;
                        x[i] = left.value;
                        base = add(base, lc);
                    }
                    (false, true) => {
                        forced_r += 1;
                        x[i] = right.value;
                        base = add(base, rc);
                    }
                    (false, false) => {
                        // Every value has infinite unary cost.
                        x[i] = if has_l { left.value } else { right.value };
                        base = None;
                    }
                }
            }
            let Some(base) = base else {
                if !have_best {
                    best = LrBest { total: None, x, case_one, left_count: forced_l, endpoint: true };
                    have_best = true;
                }
                continue;
            };
            // Start from all-R; moving variable v to L changes unaries by delta_v.
            let mut start = base;
            let mut order: Vec<(i128, usize)> = Vec::with_capacity(free.len());
            for (k, (_, l, r)) in free.iter().enumerate() {
                let (l, r) = (l.cost.expect("free side finite"), r.cost.expect("free side finite"));
                start += r;
                order.push((l - r, k));
            }
            order.sort();
            let f = free.len();
            let quad = |t: usize| -> i128 { ((forced_l + t) as i128) * ((forced_r + f - t) as i128) * unit };
            let mut prefix = 0i128;
            let mut best_t = 0;
            let mut best_val = start + quad(0);
            for t in 1..=f {
                prefix += order[t - 1].0;
                let v = start + prefix + quad(t);
                if v < best_val {
                    best_val = v;
                    best_t = t;
                }
            }
            let endpoint_val = {
                let all_l: i128 = order.iter().map(|o| o.0).sum();
                (start + quad(0)).min(start + all_l + quad(f))
            };
            let endpoint = endpoint_val == best_val;
            if unit_unaries && !endpoint {
                return Err(SolverError::Invariant {
                    solver: id,
                    detail: format!("interior k beats both endpoints at ({a1},{a2})"),
                });
            }
            if !have_best || best.total.map_or(true, |b| best_val < b) {
                let mut left_pick = vec![false; f];
                for o in order.iter().take(best_t) {
                    left_pick[o.1] = true;
                }
                for (k, (i, l, r)) in free.iter().enumerate() {
                    x[*i] = if left_pick[k] { l.value } else { r.value };
                }
                best = LrBest { total: Some(best_val), x, case_one, left_count: forced_l + best_t, endpoint };
                have_best = true;
            }
        }
    }
    let claimed = match best.total {
        Some(v) => scale.to_cost(i64::try_from(v).map_err(|_| crate::cost::CostError::Overflow)?)?,
        None => Cost::INF,
    };
    let r = finish(id, inst, best.x, claimed)?;
    let (a1, a2) = (r.assignment[0], r.assignment[1]);
    Ok(r.note("first_values", json!([a1, a2]))
        .note("case", if best.case_one { "c12=1" } else { "c12=0" })
        .note("k", best.left_count)
        .note("endpoint_optimal", best.endpoint))
}

/// Max-CSP instances whose triangles are all `{0,0,0}` or `{0,1,1}`.
pub fn solve_lr_class(inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    const ID: &str = "lr";
    if opts.check_profile {
        require_profile(ID, inst, Scheme::MaxCsp, &[TripleType::Greater, TripleType::Zero])?;
    }
    let unit_unaries = (0..inst.n()).all(|i| (0..inst.domain_size(i)).all(|a| {
        let c = inst.unary(i, a);
        c.is_zero() || c == Cost::ONE
    }));
    lr_core(ID, inst, unit_unaries)
}

fn require_unit_costs(id: &'static str, inst: &BinaryInstance) -> Result<(), SolverError> {
    let bad = |c: &Cost| !(c.is_zero() || *c == Cost::ONE);
    for i in 0..inst.n() {
        if let Some(c) = inst.unary_table(i).and_then(|t| t.iter().find(|c| bad(c))) {
            return Err(SolverError::ProfileViolation { solver: id, detail: format!("unary cost {c} on variable {i} is not 0 or 1"), witness: None });
        }
    }
    for (i, j, t) in inst.binary_tables() {
        if let Some(c) = t.entries().iter().find(|c| bad(c)) {
            return Err(SolverError::ProfileViolation { solver: id, detail: format!("binary cost {c} on pair ({i},{j}) is not 0 or 1"), witness: None });
        }
    }
    Ok(())
}

/// Max-CSP instances whose triangles are `{1,1,1}` or `{0,1,1}`: zero-cost
/// pairs of any assignment form a matching, so the optimum is
/// `C(n,2) − ν(G) + (variables with all-one unaries)`.
pub fn solve_matching_cardinality_class(inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    const ID: &str = "matching-cardinality";
    use TripleType::*;
    require_unit_costs(ID, inst)?;
    if opts.check_profile {
        require_profile(ID, inst, Scheme::MaxCsp, &[Greater, One])?;
    }
    let n = inst.n();
    // Each variable keeps its zero-unary values, or everything if none.
    let mut constant = 0u32;
    let keep: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let zeros: Vec<usize> = (0..inst.domain_size(i)).filter(|&a| inst.unary(i, a).is_zero()).collect();
            if zeros.is_empty() {
                constant += 1;
                (0..inst.domain_size(i)).collect()
            } else {
                zeros
            }
        })
        .collect();
    // Each assignment may share zero pairs with one other variable only.
    for i in 0..n {
        for a in 0..inst.domain_size(i) {
            let mut partner: Option<(usize, usize)> = None;
            for j in (0..n).filter(|&j| j != i) {
                if let Some(b) = (0..inst.domain_size(j)).find(|&b| inst.binary(i, a, j, b).is_zero()) {
                    if let Some((pj, pb)) = partner {
                        let mut tri = [(i, a), (pj, pb), (j, b)];
                        tri.sort();
                        let [(v0, x0), (v1, x1), (v2, x2)] = tri;
                        return Err(SolverError::ProfileViolation {
                            solver: ID,
                            detail: format!("value {a} of variable {i} has zero-cost pairs with variables {pj} and {j}"),
                            witness: Some(Triangle {
                                vars: [v0, v1, v2],
                                values: [x0, x1, x2],
                                costs: [inst.binary(v0, x0, v1, x1), inst.binary(v0, x0, v2, x2), inst.binary(v1, x1, v2, x2)],
                            }),
                        });
                    }
                    partner = Some((j, b));
                }
            }
        }
    }
    let mut edges = Vec::new();
    let mut zero_pair = std::collections::HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let found = keep[i].iter().flat_map(|&a| keep[j].iter().map(move |&b| (a, b))).find(|&(a, b)| inst.binary(i, a, j, b).is_zero());
            if let Some(p) = found {
                edges.push((i, j));
                zero_pair.insert((i, j), p);
            }
        }
    }
    let m = max_cardinality_matching(n, &edges)?;
    let mut x: Vec<usize> = keep.iter().map(|k| k[0]).collect();
    for &(i, j) in &m.edges {
        let (a, b) = zero_pair[&(i, j)];
        x[i] = a;
        x[j] = b;
    }
    let claimed = Cost::from_ratio(((pairs(n) - m.edges.len() as u64 + u64::from(constant)) as i64).into())?;
    Ok(finish(ID, inst, x, claimed)?
        .note("matching", json!(m.edges))
        .note("matching_size", m.edges.len())
        .note("unary_constant", constant))
}

/// Finite instances whose triangles relative to the minimum binary cost
/// `μ` are `{μ,μ,μ}` or `{μ,β,β}`. Either every non-`μ` entry lies on a
/// table touching one common variable, or only one excess value occurs,
/// which reduces to the `{>, 0}` Max-CSP algorithm after scaling.
pub fn solve_min0_class(inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    const ID: &str = "min0";
    if opts.check_profile {
        require_profile(ID, inst, Scheme::Min0, &[TripleType::Greater, TripleType::Zero])?;
    }
    let anchors = crate::triangles::anchors_for(inst, Scheme::Min0)?;
    let mu = anchors.mu;
    let n = inst.n();
    let base = mu.checked_mul_int(pairs(n))?;
    let excess = |i: usize, a: usize, j: usize, b: usize| -> Result<Cost, SolverError> { Ok(inst.binary(i, a, j, b).checked_sub(mu)?) };
    let mut nonzero: Vec<(usize, usize)> = Vec::new();
    let mut values: Vec<(Cost, (usize, usize, usize, usize))> = Vec::new();
    for (i, j, t) in inst.binary_tables() {
        let mut any = false;
        for a in 0..t.rows() {
            for b in 0..t.cols() {
                let e = excess(i, a, j, b)?;
                if !e.is_zero() {
                    any = true;
                    if !values.iter().any(|(v, _)| *v == e) {
                        values.push((e, (i, j, a, b)));
                    }
                }
            }
        }
        if any {
            nonzero.push((i, j));
        }
    }

    let per_variable_minima = |fixed: Option<(usize, usize)>| -> Result<(Vec<usize>, Cost), SolverError> {
        let mut x = vec![0; n];
        let mut total = base;
        for i in 0..n {
            if let Some((k, a)) = fixed {
                if i == k {
                    x[i] = a;
                    total = total.checked_add(inst.unary(k, a))?;
                    continue;
                }
            }
            let mut best: Option<(usize, Cost)> = None;
            for b in 0..inst.domain_size(i) {
                let mut c = inst.unary(i, b);
                if let Some((k, a)) = fixed {
                    c = c.checked_add(excess(k, a, i, b)?)?;
                }
                if best.map_or(true, |(_, bc)| c < bc) {
                    best = Some((b, c));
                }
            }
            let (b, c) = best.expect("non-empty domain");
            x[i] = b;
            total = total.checked_add(c)?;
        }
        Ok((x, total))
    };

    if nonzero.is_empty() {
        let (x, c) = per_variable_minima(None)?;
        return Ok(finish(ID, inst, x, c)?.note("case", "all-minimal").note("mu", mu.to_string()));
    }
    let mut common = vec![nonzero[0].0, nonzero[0].1];
    for &(i, j) in &nonzero[1..] {
        common.retain(|&v| v == i || v == j);
    }
    if let Some(&k) = common.iter().min() {
        let mut best: Option<(Vec<usize>, Cost)> = None;
        for a in 0..inst.domain_size(k) {
            let (x, c) = per_variable_minima(Some((k, a)))?;
            if best.as_ref().map_or(true, |(_, bc)| c < *bc) {
                best = Some((x, c));
            }
        }
        let (x, c) = best.expect("non-empty domain");
        return Ok(finish(ID, inst, x, c)?.note("case", "common-variable").note("variable", k).note("mu", mu.to_string()));
    }
    if values.len() != 1 {
        let (v1, (i1, j1, a1, b1)) = values[0];
        let (v2, (i2, j2, a2, b2)) = values[1];
        return Err(SolverError::ProfileViolation {
            solver: ID,
            detail: format!(
                "no common variable and two excess costs: c_{i1}{j1}({a1},{b1}) − μ = {v1}, c_{i2}{j2}({a2},{b2}) − μ = {v2}"
            ),
            witness: None,
        });
    }
    let alpha = values[0].0;
    let mut scaled = BinaryInstance::new(inst.variables().to_vec())?;
    for i in 0..n {
        if let Some(t) = inst.unary_table(i) {
            let u = t.iter().map(|c| c.checked_div(alpha)).collect::<Result<Vec<_>, _>>()?;
            scaled.set_unary(i, u)?;
        }
    }
    for (i, j, t) in inst.binary_tables() {
        let mut rows = Vec::with_capacity(t.rows());
        for a in 0..t.rows() {
            let row = (0..t.cols()).map(|b| Ok(excess(i, a, j, b)?.checked_div(alpha)?)).collect::<Result<Vec<_>, SolverError>>()?;
            rows.push(row);
        }
        scaled.set_binary(i, j, rows)?;
    }
    let r = lr_core(ID, &scaled, false)?;
    let claimed = r.cost.as_ratio().map_or(Ok(Cost::INF), |q| {
        Cost::from_ratio(q * alpha.as_ratio().expect("finite")).and_then(|c| c.checked_add(base))
    })?;
    let mut out = finish(ID, inst, r.assignment, claimed)?.note("case", "single-excess").note("alpha", alpha.to_string()).note("mu", mu.to_string());
    for (k, v) in r.certificate {
        out.certificate.insert(format!("lr_{k}"), v);
    }
    Ok(out)
}

/// Finite instances whose triangles are `{α,M,M}` or `{M,M,M}` with `M` the
/// maximum binary cost: reduces to maximum weight matching on weights
/// `M − α_ij`, and `weight(M_G) + cost(x) = C(n,2)·M` after unary
/// normalisation.
pub fn solve_weighted_matching_class(inst: &BinaryInstance, opts: SolverOptions) -> Result<SolveResult, SolverError> {
    const ID: &str = "weighted-matching";
    if opts.check_profile {
        require_profile(ID, inst, Scheme::MaxM, &[TripleType::Greater, TripleType::Top])?;
    }
    let anchors = crate::triangles::anchors_for(inst, Scheme::MaxM)?;
    let big_m = anchors.max;
    let n = inst.n();
    // Values with infinite unary cost never occur in a finite optimum.
    let alive: Vec<Vec<usize>> = (0..n).map(|i| (0..inst.domain_size(i)).filter(|&a| inst.unary(i, a).is_finite()).collect()).collect();
    if let Some(i) = alive.iter().position(Vec::is_empty) {
        return Ok(finish(ID, inst, vec![0; n], Cost::INF)?.note("infeasible_variable", i));
    }
    let mut offset = Cost::ZERO;
    let mut d = vec![0; n];
    let mut shift = vec![Cost::ZERO; n];
    for i in 0..n {
        let (b, c) = argmin_unary(inst, i, alive[i].iter().copied()).expect("non-empty");
        d[i] = b;
        shift[i] = c;
        offset = offset.checked_add(c)?;
    }
    let norm = |i: usize, a: usize| inst.unary(i, a).checked_sub(shift[i]);
    let mut g = MatchingGraph::new(n);
    let mut argmin = std::collections::HashMap::new();
    let mut extra_non_maximal = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            let mut best: Option<(Cost, usize, usize)> = None;
            for &u in &alive[i] {
                for &v in &alive[j] {
                    let c = norm(i, u)?.checked_add(inst.binary(i, u, j, v))?.checked_add(norm(j, v)?)?;
                    if best.map_or(true, |(bc, _, _)| c < bc) {
                        best = Some((c, u, v));
                    }
                }
            }
            let (alpha, u, v) = best.expect("non-empty domains");
            for &a in &alive[i] {
                for &b in &alive[j] {
                    if (a, b) != (u, v) && inst.binary(i, a, j, b) < big_m {
                        extra_non_maximal += 1;
                    }
                }
            }
            if alpha < big_m {
                g.add_edge(i, j, big_m.checked_sub(alpha)?)?;
                argmin.insert((i, j), (u, v));
            }
        }
    }
    let m = max_weight_matching(&g)?;
    let mut x = d.clone();
    for &(i, j) in &m.edges {
        let (u, v) = argmin[&(i, j)];
        x[i] = u;
        x[j] = v;
    }
    let total = big_m.checked_mul_int(pairs(n))?;
    let claimed = total.checked_sub(m.weight)?.checked_add(offset)?;
    let actual = inst.evaluate(&x)?;
    // The matching identity, on unaries normalised to minimum zero.
    let normalised = actual.checked_sub(offset)?;
    if m.weight.checked_add(normalised)? != total {
        return Err(SolverError::Invariant {
            solver: ID,
            detail: format!(
                "matching weight {} + cost {} differs from C(n,2)·M = {}; {} non-maximal entries besides the per-table minimisers",
                m.weight, normalised, total, extra_non_maximal
            ),
        });
    }
    Ok(finish(ID, inst, x, claimed)?
        .note("M", big_m.to_string())
        .note("matching", json!(m.edges))
        .note("matching_weight", m.weight.to_string())
        .note("unary_offset", offset.to_string())
        .note("identity_holds", true))
}

/// Instances with at most one value per variable, or crisp instances over
/// Boolean domains (solved as 2-SAT).
pub fn solve_small_domain(inst: &BinaryInstance) -> Result<SolveResult, SolverError> {
    const ID: &str = "small-domain";
    let n = inst.n();
    if inst.domain_max() <= 1 {
        let x = vec![0; n];
        let c = inst.evaluate(&x)?;
        return finish(ID, inst, x, c);
    }
    if inst.domain_max() > 2 || !inst.binaries_crisp() || !inst.unaries_crisp() {
        return Err(SolverError::ProfileViolation {
            solver: ID,
            detail: "needs single-value domains or a crisp instance over Boolean domains".into(),
            witness: None,
        });
    }
    // Variable i is true iff it takes value 1.
    let lit = |i: usize, a: usize| if a == 1 { Lit::pos(i) } else { Lit::neg(i) };
    let mut sat = TwoSat::new(n);
    for i in 0..n {
        if inst.domain_size(i) == 1 {
            sat.add_clause(Lit::neg(i), Lit::neg(i));
        }
        for a in 0..inst.domain_size(i) {
            if inst.unary(i, a).is_inf() {
                sat.add_clause(lit(i, a).not(), lit(i, a).not());
            }
        }
    }
    for (i, j, t) in inst.binary_tables() {
        for a in 0..t.rows() {
            for b in 0..t.cols() {
                if t.get(a, b).is_inf() {
                    sat.add_clause(lit(i, a).not(), lit(j, b).not());
                }
            }
        }
    }
    match sat.solve() {
        Some(model) => {
            let x = model.iter().map(|&v| usize::from(v)).collect();
            Ok(finish(ID, inst, x, Cost::ZERO)?.note("two_sat", "satisfiable"))
        }
        None => Ok(finish(ID, inst, vec![0; n], Cost::INF)?.note("two_sat", "unsatisfiable")),
    }
}
