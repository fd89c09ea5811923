//! Seeded instance generators. Every generated binary instance with a
//! target profile is checked by the classifier before it is returned.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cost::Cost;
use crate::flow::{Arc, FlowNetwork};
use crate::model::{AssignmentSet, BinaryInstance, CountFunction, CountInstance, ModelError, Variable};
use crate::triangles::{profile, Scheme, TripleType, TypeSet};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("no instance with profile within {{{target}}} under {scheme} found after {retries} attempts")]
    RetriesExhausted { scheme: Scheme, target: String, retries: usize },
    #[error("invalid generator parameters: {0}")]
    Invalid(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub const PROFILE_RETRIES: usize = 400;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn c(n: u32) -> Cost {
    Cost::int(n)
}

fn half(n: u32) -> Cost {
    Cost::ratio(i64::from(n), 2).expect("valid ratio")
}

fn variables(sizes: &[usize]) -> Vec<Variable> {
    sizes.iter().enumerate().map(|(i, &d)| Variable::indexed(format!("v{i}"), d)).collect()
}

/// A unary cost suited to the scheme's solvers.
fn random_unary(rng: &mut ChaCha8Rng, scheme: Scheme) -> Cost {
    match scheme {
        Scheme::MaxCsp => c(rng.gen_range(0..=1)),
        Scheme::Csp => match rng.gen_range(0..10) {
            0 => Cost::INF,
            1 => half(rng.gen_range(1..=5)),
            k => c(k % 4),
        },
        _ => match rng.gen_range(0..12) {
            0 => half(rng.gen_range(1..=7)),
            k => c(k % 5),
        },
    }
}

fn with_unaries(rng: &mut ChaCha8Rng, inst: &mut BinaryInstance, scheme: Scheme) -> Result<(), GenError> {
    for i in 0..inst.n() {
        if rng.gen_bool(0.8) {
            let u = (0..inst.domain_size(i)).map(|_| random_unary(rng, scheme)).collect();
            inst.set_unary(i, u)?;
        }
    }
    Ok(())
}

/// Fills every table from `cost(i, a, j, b)`.
fn fill(sizes: &[usize], mut cost: impl FnMut(usize, usize, usize, usize) -> Cost) -> Result<BinaryInstance, GenError> {
    let mut inst = BinaryInstance::new(variables(sizes))?;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            let rows = (0..sizes[i]).map(|a| (0..sizes[j]).map(|b| cost(i, a, j, b)).collect()).collect();
            inst.set_binary(i, j, rows)?;
        }
    }
    Ok(inst)
}

/// Random partner structure: each value `(i, a)` gets special pairs with
/// values of at most one other variable. Returns the special pairs.
fn plant_partners(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Vec<((usize, usize), (usize, usize))> {
    let n = sizes.len();
    let mut partner: Vec<Vec<Option<usize>>> = sizes.iter().map(|&d| vec![None; d]).collect();
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let attempts = rng.gen_range(0..=2 * n * sizes.iter().max().copied().unwrap_or(1));
    for _ in 0..attempts {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let (a, b) = (rng.gen_range(0..sizes[i]), rng.gen_range(0..sizes[j]));
        let free_i = partner[i][a].map_or(true, |p| p == j);
        let free_j = partner[j][b].map_or(true, |p| p == i);
        if free_i && free_j {
            partner[i][a] = Some(j);
            partner[j][b] = Some(i);
            let pair = if i < j { ((i, a), (j, b)) } else { ((j, b), (i, a)) };
            if !out.contains(&pair) {
                out.push(pair);
            }
        }
    }
    out
}

/// 2-colouring of the pairs of `n ≤ 5` vertices without a monochromatic
/// triangle (the pentagon and its complement), randomly relabelled.
fn ramsey_colouring(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<Vec<bool>>> {
    if n > 5 {
        return None;
    }
    let mut perm: Vec<usize> = (0..5).collect();
    perm.shuffle(rng);
    let mut col = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let d = (perm[i] + 5 - perm[j]) % 5;
            col[i][j] = d == 1 || d == 4;
        }
    }
    Some(col)
}

type Builder = fn(&mut ChaCha8Rng, &[usize]) -> Result<Option<BinaryInstance>, GenError>;

fn crisp_equivalence(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    // Compatibility is "same label": transitive, so no {0,0,∞} triangles.
    // Label 0 is common so that consistent solutions exist often.
    let labels: Vec<Vec<usize>> =
        sizes.iter().map(|&d| (0..d).map(|a| if a == 0 && rng.gen_bool(0.7) { 0 } else { rng.gen_range(0..3) }).collect()).collect();
    Ok(Some(fill(sizes, |i, a, j, b| if labels[i][a] == labels[j][b] { Cost::ZERO } else { Cost::INF })?))
}

fn crisp_no_all_zero(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    let mut inst = fill(sizes, |_, _, _, _| if rng.gen_bool(0.6) { Cost::ZERO } else { Cost::INF })?;
    // Break every all-zero triangle by forbidding one of its pairs.
    loop {
        let p = profile(&inst, Scheme::Csp).map_err(|e| GenError::Invalid(e.to_string()))?;
        let Some(w) = p.witness(TripleType::Zero).copied() else { return Ok(Some(inst)) };
        inst.set_binary_entry(w.vars[0], w.values[0], w.vars[1], w.values[1], Cost::INF)?;
    }
}

fn zero_one_partners(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    let zeros = plant_partners(rng, sizes);
    Ok(Some(fill(sizes, |i, a, j, b| if zeros.contains(&((i, a), (j, b))) { Cost::ZERO } else { Cost::ONE })?))
}

fn xor_labels(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    // c = σ(i,a) ⊕ σ(j,b): each triangle has an even number of ones.
    let sigma: Vec<Vec<bool>> = sizes.iter().map(|&d| (0..d).map(|_| rng.gen()).collect()).collect();
    Ok(Some(fill(sizes, |i, a, j, b| if sigma[i][a] != sigma[j][b] { Cost::ONE } else { Cost::ZERO })?))
}

fn ramsey_unit(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    let Some(col) = ramsey_colouring(rng, sizes.len()) else { return Ok(None) };
    Ok(Some(fill(sizes, |i, _, j, _| if col[i][j] { Cost::ONE } else { Cost::ZERO })?))
}

fn maxm_partners(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    let m = rng.gen_range(2..=6u32);
    let special = plant_partners(rng, sizes);
    let low: Vec<Cost> = special.iter().map(|_| if rng.gen_bool(0.2) { half(rng.gen_range(0..2 * m)) } else { c(rng.gen_range(0..m)) }).collect();
    Ok(Some(fill(sizes, |i, a, j, b| special.iter().position(|p| *p == ((i, a), (j, b))).map_or(c(m), |k| low[k]))?))
}

fn ramsey_anchored(rng: &mut ChaCha8Rng, sizes: &[usize], top: bool) -> Result<Option<BinaryInstance>, GenError> {
    let Some(col) = ramsey_colouring(rng, sizes.len()) else { return Ok(None) };
    let (anchor, lo, hi) = if top { (7, 1, 6) } else { (1, 2, 7) };
    let mut vals = vec![vec![c(0); sizes.len()]; sizes.len()];
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            vals[i][j] = if col[i][j] { c(anchor) } else { c(rng.gen_range(lo..=hi)) };
        }
    }
    let mut inst = fill(sizes, |i, _, j, _| vals[i][j])?;
    // Perturb single entries; the classifier check rejects bad draws.
    if rng.gen_bool(0.5) && sizes.len() >= 2 {
        inst.set_binary_entry(0, 0, 1, 0, c(rng.gen_range(lo..=hi)))?;
    }
    Ok(Some(inst))
}

fn ramsey_maxm(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    ramsey_anchored(rng, sizes, true)
}

fn ramsey_min0(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    ramsey_anchored(rng, sizes, false)
}

fn min0_structured(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    let mu = if rng.gen_bool(0.5) { Cost::ZERO } else { c(rng.gen_range(1..=3)) };
    let n = sizes.len();
    let raw = if rng.gen_bool(0.5) && n > 0 {
        // Common variable k whose values carry the excess.
        let k = rng.gen_range(0..n);
        let f: Vec<Cost> = (0..sizes[k]).map(|_| if rng.gen_bool(0.5) { Cost::ZERO } else { c(rng.gen_range(1..=4)) }).collect();
        fill(sizes, |i, a, j, b| {
            if i == k {
                f[a]
            } else if j == k {
                f[b]
            } else {
                Cost::ZERO
            }
        })?
    } else {
        let alpha = if rng.gen_bool(0.3) { half(rng.gen_range(1..=5)) } else { c(rng.gen_range(1..=4)) };
        let sigma: Vec<Vec<bool>> = sizes.iter().map(|&d| (0..d).map(|_| rng.gen()).collect()).collect();
        fill(sizes, |i, a, j, b| if sigma[i][a] != sigma[j][b] { alpha } else { Cost::ZERO })?
    };
    let mut inst = BinaryInstance::new(variables(sizes))?;
    for (i, j, t) in raw.binary_tables() {
        let rows = t.to_rows().into_iter().map(|r| r.into_iter().map(|x| x + mu).collect()).collect();
        inst.set_binary(i, j, rows)?;
    }
    Ok(Some(inst))
}

fn anti_ultrametric(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    // Random hierarchy over all assignments: cost = depth of the lowest
    // common cluster, so the two smallest costs of a triangle coincide.
    let points: Vec<(usize, usize)> = sizes.iter().enumerate().flat_map(|(i, &d)| (0..d).map(move |a| (i, a))).collect();
    let depth = 3;
    let path: Vec<Vec<u8>> = points.iter().map(|_| (0..depth).map(|_| rng.gen_range(0..2)).collect()).collect();
    let index = |i: usize, a: usize| points.iter().position(|&p| p == (i, a)).expect("point");
    Ok(Some(fill(sizes, |i, a, j, b| {
        let (p, q) = (&path[index(i, a)], &path[index(j, b)]);
        c(p.iter().zip(q).take_while(|(x, y)| x == y).count() as u32)
    })?))
}

fn constant(rng: &mut ChaCha8Rng, sizes: &[usize]) -> Result<Option<BinaryInstance>, GenError> {
    let v = c(rng.gen_range(0..=4));
    Ok(Some(fill(sizes, |_, _, _, _| v)?))
}

fn builders(scheme: Scheme) -> Vec<(&'static [TripleType], Builder)> {
    use TripleType::*;
    match scheme {
        Scheme::Csp => vec![(&[Greater, Zero, Inf], crisp_equivalence as Builder), (&[Less, Greater, Inf], crisp_no_all_zero)],
        Scheme::MaxCsp => vec![(&[Greater, One], zero_one_partners as Builder), (&[Greater, Zero], xor_labels), (&[Less, Greater], ramsey_unit)],
        Scheme::MaxM => vec![(&[Greater, Top], maxm_partners as Builder), (&[Distinct, Less, Greater], ramsey_maxm)],
        Scheme::Min0 => vec![(&[Greater, Zero], min0_structured as Builder), (&[Distinct, Less, Greater], ramsey_min0)],
        Scheme::Order => vec![(&[Equal], constant as Builder), (&[Less, Equal], anti_ultrametric)],
    }
}

fn random_tables(rng: &mut ChaCha8Rng, sizes: &[usize], scheme: Scheme) -> Result<BinaryInstance, GenError> {
    let pool: Vec<Cost> = match scheme {
        Scheme::Csp => vec![Cost::ZERO, Cost::INF],
        Scheme::MaxCsp => vec![Cost::ZERO, Cost::ONE],
        Scheme::MaxM | Scheme::Min0 => vec![c(0), c(1), c(2), c(3)],
        Scheme::Order => vec![c(0), c(1), c(2), Cost::INF],
    };
    fill(sizes, |_, _, _, _| *pool.choose(rng).expect("non-empty pool"))
}

/// An instance whose profile under `scheme` lies within `target`.
/// Domain sizes are drawn from `1..=d`.
pub fn gen_profile(n: usize, d: usize, target: TypeSet, scheme: Scheme, seed: u64) -> Result<BinaryInstance, GenError> {
    if d == 0 {
        return Err(GenError::Invalid("domain size must be positive".into()));
    }
    let mut rng = rng(seed);
    let fits = |inst: &BinaryInstance| profile(inst, scheme).map_or(false, |p| p.observed.is_subset(target));
    let usable: Vec<Builder> = builders(scheme).into_iter().filter(|(b, _)| TypeSet::of(b).is_subset(target)).map(|(_, f)| f).collect();
    for _ in 0..PROFILE_RETRIES {
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
        let candidate = match usable.choose(&mut rng) {
            Some(build) => build(&mut rng, &sizes)?,
            None => None,
        };
        let mut inst = match candidate {
            Some(inst) => inst,
            None => random_tables(&mut rng, &sizes, scheme)?,
        };
        with_unaries(&mut rng, &mut inst, scheme)?;
        if fits(&inst) {
            return Ok(inst);
        }
    }
    Err(GenError::RetriesExhausted {
        scheme,
        target: target.members(scheme).iter().map(|t| t.symbol(scheme)).collect::<Vec<_>>().join(","),
        retries: PROFILE_RETRIES,
    })
}

/// Max-Cut as Max-CSP: Boolean variables, cost 1 when an edge's endpoints
/// take equal values.
pub fn gen_maxcut(n: usize, edges: &[(usize, usize)]) -> Result<BinaryInstance, GenError> {
    let mut inst = BinaryInstance::new(variables(&vec![2; n]))?;
    for &(u, v) in edges {
        if u == v || u >= n || v >= n {
            return Err(GenError::Invalid(format!("edge ({u},{v}) is not a simple edge on {n} vertices")));
        }
        inst.set_binary(u, v, vec![vec![Cost::ONE, Cost::ZERO], vec![Cost::ZERO, Cost::ONE]])?;
    }
    Ok(inst)
}

/// Maximum matching as a `{>, 1}` Max-CSP: variable `i` ranges over
/// `{0} ∪ N(i)`; value `j` of `v_i` and value `i` of `v_j` pair at cost 0
/// for every edge, every other pair costs 1. Optimum `C(n,2) − ν(G)`.
pub fn gen_matching_encoding(n: usize, edges: &[(usize, usize)]) -> Result<BinaryInstance, GenError> {
    let mut nb: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        if u == v || u >= n || v >= n || nb[u].contains(&v) {
            return Err(GenError::Invalid(format!("edge ({u},{v}) is not a simple edge on {n} vertices")));
        }
        nb[u].push(v);
        nb[v].push(u);
    }
    for l in &mut nb {
        l.sort_unstable();
    }
    // Value 0 is the "unmatched" label; value k ≥ 1 names neighbour nb[i][k-1].
    let vars = (0..n)
        .map(|i| {
            let mut dom = vec!["0".to_string()];
            dom.extend(nb[i].iter().map(|j| (j + 1).to_string()));
            Variable::new(format!("v{}", i + 1), dom)
        })
        .collect();
    let mut inst = BinaryInstance::new(vars)?;
    for i in 0..n {
        for j in i + 1..n {
            let mut rows = vec![vec![Cost::ONE; nb[j].len() + 1]; nb[i].len() + 1];
            if let (Some(a), Some(b)) = (nb[i].iter().position(|&x| x == j), nb[j].iter().position(|&x| x == i)) {
                rows[a + 1][b + 1] = Cost::ZERO;
            }
            inst.set_binary(i, j, rows)?;
        }
    }
    Ok(inst)
}

/// Soft-GCC penalty: `l − m` below the lower bound, `m − u` above the
/// upper bound, 0 in between; `m` ranges over `0..=n`.
pub fn gcc_penalty(n: usize, lower: usize, upper: usize) -> CountFunction {
    let values = (0..=n)
        .map(|m| {
            let excess = if m < lower { lower - m } else { m.saturating_sub(upper) };
            Cost::int(excess as u32)
        })
        .collect();
    CountFunction::new(values).expect("finite everywhere")
}

/// Soft global cardinality constraint over `n` variables sharing domain
/// `0..d`: one set per value, with per-value bounds.
pub fn gen_soft_gcc(n: usize, d: usize, bounds: &[(usize, usize)]) -> Result<CountInstance, GenError> {
    if bounds.len() != d {
        return Err(GenError::Invalid(format!("{} bounds for {d} values", bounds.len())));
    }
    let sets = bounds
        .iter()
        .enumerate()
        .map(|(a, &(l, u))| AssignmentSet::new((0..n).map(|i| (i, a)).collect(), gcc_penalty(n, l, u)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CountInstance::new(variables(&vec![d; n]), sets, Cost::ZERO)?)
}

/// Soft GCC per variable group; groups must be pairwise nested or disjoint.
/// `bounds[g][a]` bounds the number of group-`g` variables taking value `a`.
pub fn gen_nested_gcc(n: usize, d: usize, groups: &[Vec<usize>], bounds: &[Vec<(usize, usize)>]) -> Result<CountInstance, GenError> {
    for (x, gx) in groups.iter().enumerate() {
        for gy in &groups[x + 1..] {
            let inter = gx.iter().filter(|v| gy.contains(v)).count();
            if inter != 0 && inter != gx.len() && inter != gy.len() {
                return Err(GenError::Invalid("groups are not nested".into()));
            }
        }
    }
    let mut sets = Vec::new();
    for (g, group) in groups.iter().enumerate() {
        for (a, &(l, u)) in bounds[g].iter().enumerate() {
            sets.push(AssignmentSet::new(group.iter().map(|&i| (i, a)).collect(), gcc_penalty(group.len(), l, u))?);
        }
    }
    Ok(CountInstance::new(variables(&vec![d; n]), sets, Cost::ZERO)?)
}

/// A random convex count function on `0..=s`, possibly with a restricted
/// finite interval.
pub fn random_convex(rng: &mut ChaCha8Rng, s: usize) -> CountFunction {
    let (l, u) = if rng.gen_bool(0.25) {
        let l = rng.gen_range(0..=s);
        (l, rng.gen_range(l..=s))
    } else {
        (0, s)
    };
    // Non-decreasing slopes from a sorted random draw, shifted to keep
    // every value non-negative.
    let mut slopes: Vec<i64> = (l..u).map(|_| rng.gen_range(-3..=3)).collect();
    slopes.sort_unstable();
    let mut vals = vec![0i64; u - l + 1];
    for k in 1..vals.len() {
        vals[k] = vals[k - 1] + slopes[k - 1];
    }
    let lift = -vals.iter().min().copied().unwrap_or(0) + rng.gen_range(0..=2);
    let denom = if rng.gen_bool(0.2) { 2 } else { 1 };
    let values = (0..=s)
        .map(|m| if m < l || m > u { Cost::INF } else { Cost::ratio(vals[m - l] + lift, denom).expect("non-negative") })
        .collect();
    CountFunction::new(values).expect("contiguous support")
}

/// Random laminar family over the assignments of `sizes`: recursive splits
/// of random clusters, a random subset of which become sets.
pub fn random_laminar_sets(rng: &mut ChaCha8Rng, sizes: &[usize], max_sets: usize) -> Vec<Vec<(usize, usize)>> {
    let mut universe: Vec<(usize, usize)> = sizes.iter().enumerate().flat_map(|(i, &d)| (0..d).map(move |a| (i, a))).collect();
    universe.shuffle(rng);
    let mut out: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut stack = vec![universe];
    while let Some(block) = stack.pop() {
        if out.len() >= max_sets {
            break;
        }
        if block.is_empty() {
            continue;
        }
        if rng.gen_bool(0.7) {
            let mut s = block.clone();
            s.sort_unstable();
            if !out.contains(&s) {
                out.push(s);
            }
        }
        if block.len() > 1 {
            let cut = rng.gen_range(1..block.len());
            stack.push(block[cut..].to_vec());
            stack.push(block[..cut].to_vec());
        }
    }
    out
}

fn count_instance(rng: &mut ChaCha8Rng, sizes: &[usize], sets: Vec<Vec<(usize, usize)>>) -> Result<CountInstance, GenError> {
    let mut out = Vec::new();
    for members in sets {
        let mut vars: Vec<usize> = members.iter().map(|m| m.0).collect();
        vars.dedup();
        vars.sort_unstable();
        vars.dedup();
        let g = random_convex(rng, vars.len());
        out.push(AssignmentSet::new(members, g)?);
    }
    let constant = if rng.gen_bool(0.2) { c(rng.gen_range(1..=3)) } else { Cost::ZERO };
    Ok(CountInstance::new(variables(sizes), out, constant)?)
}

/// Random laminar CFC instance with convex count functions.
pub fn gen_laminar(n: usize, d: usize, seed: u64) -> Result<CountInstance, GenError> {
    let mut rng = rng(seed);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
    let total: usize = sizes.iter().sum();
    let max_sets = rng.gen_range(1..=(2 * total).saturating_sub(1).max(1));
    let sets = random_laminar_sets(&mut rng, &sizes, max_sets);
    count_instance(&mut rng, &sizes, sets)
}

/// Random cross-free CFC instance: a laminar family in which a random
/// selection of sets is replaced by its complement.
pub fn gen_crossfree(n: usize, d: usize, seed: u64) -> Result<CountInstance, GenError> {
    let mut rng = rng(seed);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
    let universe: Vec<(usize, usize)> = sizes.iter().enumerate().flat_map(|(i, &d)| (0..d).map(move |a| (i, a))).collect();
    let total = universe.len();
    let max_sets = rng.gen_range(1..=(2 * total).saturating_sub(1).max(1));
    let mut sets = random_laminar_sets(&mut rng, &sizes, max_sets);
    for s in sets.iter_mut() {
        if rng.gen_bool(0.4) {
            let comp: Vec<(usize, usize)> = universe.iter().filter(|p| !s.contains(p)).copied().collect();
            if !comp.is_empty() {
                *s = comp;
            }
        }
    }
    count_instance(&mut rng, &sizes, sets)
}

/// Full laminar tree over `n` variables with domain `d`: a balanced binary
/// hierarchy of variable groups, one set per (group, value) pair, soft-GCC
/// style penalties.
pub fn gen_full_laminar(n: usize, d: usize, seed: u64) -> Result<CountInstance, GenError> {
    let mut rng = rng(seed);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![(0..n).collect::<Vec<_>>()];
    while let Some(g) = stack.pop() {
        if g.len() > 1 {
            let mid = g.len() / 2;
            stack.push(g[mid..].to_vec());
            stack.push(g[..mid].to_vec());
        }
        groups.push(g);
    }
    let bounds: Vec<Vec<(usize, usize)>> = groups
        .iter()
        .map(|g| {
            (0..d)
                .map(|_| {
                    let l = rng.gen_range(0..=g.len() / d);
                    (l, rng.gen_range(l..=g.len()))
                })
                .collect()
        })
        .collect();
    gen_nested_gcc(n, d, &groups, &bounds)
}

/// Boolean laminar instance for the renaming suites.
pub fn gen_boolean_laminar(n: usize, seed: u64) -> Result<CountInstance, GenError> {
    gen_laminar(n, 2, seed).and_then(|inst| {
        // Force every domain to size two so renaming is defined.
        let mut rng = rng(seed ^ 0x5eed);
        let sizes = vec![2; n];
        let sets = inst.sets().iter().map(|s| s.members().to_vec()).collect();
        count_instance(&mut rng, &sizes, sets)
    })
}

/// Laminar instance whose sets have at most two members, over domains of
/// size up to `d` (so larger than three when `d > 3`).
pub fn gen_pairsets(n: usize, d: usize, seed: u64) -> Result<CountInstance, GenError> {
    let mut rng = rng(seed);
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
    let mut universe: Vec<(usize, usize)> = sizes.iter().enumerate().flat_map(|(i, &d)| (0..d).map(move |a| (i, a))).collect();
    universe.shuffle(&mut rng);
    let mut sets = Vec::new();
    let mut rest = universe.as_slice();
    while !rest.is_empty() {
        let take = if rest.len() >= 2 && rng.gen_bool(0.6) { 2 } else { 1 };
        let (block, tail) = rest.split_at(take);
        rest = tail;
        if rng.gen_bool(0.8) {
            sets.push(block.to_vec());
        }
        // A singleton nested inside the pair.
        if take == 2 && rng.gen_bool(0.3) {
            sets.push(vec![block[rng.gen_range(0..2)]]);
        }
    }
    count_instance(&mut rng, &sizes, sets)
}

/// Random laminar Boolean instance with a random subset of its
/// constraints renamed, so it is renamable but usually not cross-free.
pub fn gen_renamable(n: usize, seed: u64) -> Result<CountInstance, GenError> {
    let base = gen_boolean_laminar(n, seed)?;
    let mut rng = rng(seed ^ 0xa11ce);
    let sets = base
        .sets()
        .iter()
        .map(|s| if rng.gen_bool(0.5) { crate::renaming::rename_set(s) } else { Ok(s.clone()) })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CountInstance::new(base.variables().to_vec(), sets, base.constant())?)
}

/// Random flow network: up to `nodes` nodes, `arcs` arcs with capacities
/// up to `max_cap`, value up to `max_cap`. With `linear`, every arc costs
/// `unit · f` on `[lower, upper]`; otherwise costs are random convex tables.
pub fn random_network(seed: u64, nodes: usize, arcs: usize, max_cap: usize, linear: bool) -> FlowNetwork {
    let mut rng = rng(seed);
    let nodes = rng.gen_range(2..=nodes.max(2));
    let m = rng.gen_range(1..=arcs.max(1));
    let mut net = FlowNetwork::new(nodes, 0, nodes - 1, rng.gen_range(0..=max_cap));
    for _ in 0..m {
        let tail = rng.gen_range(0..nodes);
        let mut head = rng.gen_range(0..nodes - 1);
        if head >= tail {
            head += 1;
        }
        let cap = rng.gen_range(1..=max_cap);
        let arc = if linear {
            let lower = if rng.gen_bool(0.2) { rng.gen_range(0..=cap) } else { 0 };
            Arc::linear(tail, head, lower, cap, c(rng.gen_range(0..=5)))
        } else {
            Arc::new(tail, head, random_convex(&mut rng, cap))
        };
        net.add_arc(arc);
    }
    net
}
