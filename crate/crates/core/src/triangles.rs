//! Triangle enumeration, triple-type classification under the five
//! schemes, the joint-winner check and the dichotomy verdict tables.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::cost::Cost;
use crate::model::BinaryInstance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    Csp,
    MaxCsp,
    Order,
    Min0,
    MaxM,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Csp, Scheme::MaxCsp, Scheme::Order, Scheme::Min0, Scheme::MaxM];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Csp => "csp",
            Scheme::MaxCsp => "maxcsp",
            Scheme::Order => "order",
            Scheme::Min0 => "min0",
            Scheme::MaxM => "maxm",
        }
    }

    /// The triple types this scheme distinguishes, in display order.
    pub fn alphabet(self) -> &'static [TripleType] {
        use TripleType::*;
        match self {
            Scheme::Csp => &[Zero, Less, Greater, Inf],
            Scheme::MaxCsp => &[Zero, Less, Greater, One],
            Scheme::Order => &[Distinct, Less, Greater, Equal],
            Scheme::Min0 => &[Distinct, Less, Greater, Zero, Other],
            Scheme::MaxM => &[Distinct, Less, Greater, Top, Other],
        }
    }

    /// Parses a type symbol as printed by [`TripleType::symbol`].
    pub fn parse_type(self, symbol: &str) -> Option<TripleType> {
        self.alphabet().iter().copied().find(|t| t.symbol(self) == symbol)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Scheme, String> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown scheme {s:?} (expected csp, maxcsp, order, min0 or maxm)"))
    }
}

/// Order pattern of a sorted triple `α ≤ β ≤ γ`. The rendering depends on
/// the scheme: `Less` is `<` for CSP, `<0` under MIN0 and `<M` under MAXM.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TripleType {
    /// All three costs equal to the scheme's zero.
    Zero,
    /// `{1,1,1}` under MAXCSP.
    One,
    /// `{∞,∞,∞}` under CSP.
    Inf,
    /// `{M,M,M}` under MAXM.
    Top,
    /// All equal (ORDER).
    Equal,
    /// `α = β < γ`.
    Less,
    /// `α < β = γ`.
    Greater,
    /// `α < β < γ`.
    Distinct,
    /// Residual pattern outside the MIN0 / MAXM alphabets.
    Other,
}

impl TripleType {
    fn bit(self) -> u16 {
        1 << (self as u16)
    }

    pub fn symbol(self, scheme: Scheme) -> &'static str {
        use TripleType::*;
        let suffix_min = matches!(scheme, Scheme::Min0);
        let suffix_max = matches!(scheme, Scheme::MaxM);
        match self {
            Zero => "0",
            One => "1",
            Inf => "inf",
            Top => "M",
            Equal => "=",
            Other => "other",
            Less if suffix_min => "<0",
            Less if suffix_max => "<M",
            Less => "<",
            Greater if suffix_min => ">0",
            Greater if suffix_max => ">M",
            Greater => ">",
            Distinct if suffix_min => "delta0",
            Distinct if suffix_max => "deltaM",
            Distinct => "delta",
        }
    }
}

/// A set of triple types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct TypeSet(u16);

impl TypeSet {
    pub fn new() -> TypeSet {
        TypeSet(0)
    }

    pub fn of(types: &[TripleType]) -> TypeSet {
        TypeSet(types.iter().fold(0, |acc, t| acc | t.bit()))
    }

    pub fn insert(&mut self, t: TripleType) {
        self.0 |= t.bit();
    }

    pub fn contains(self, t: TripleType) -> bool {
        self.0 & t.bit() != 0
    }

    pub fn is_subset(self, other: TypeSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_superset_of(self, types: &[TripleType]) -> bool {
        TypeSet::of(types).is_subset(self)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in the scheme's alphabet order.
    pub fn members(self, scheme: Scheme) -> Vec<TripleType> {
        scheme.alphabet().iter().copied().filter(|&t| self.contains(t)).collect()
    }

    /// Every subset of the scheme's alphabet.
    pub fn all_subsets(scheme: Scheme) -> Vec<TypeSet> {
        let alpha = scheme.alphabet();
        (0u32..1 << alpha.len())
            .map(|mask| {
                let picked: Vec<TripleType> =
                    alpha.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &t)| t).collect();
                TypeSet::of(&picked)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("cost {cost} is outside the range admitted by scheme {scheme}")]
    OutOfRange { scheme: Scheme, cost: Cost },
    #[error("binary cost c_{i}{j}({a},{b}) = {cost} is outside the range admitted by scheme {scheme}")]
    TableOutOfRange { scheme: Scheme, i: usize, j: usize, a: usize, b: usize, cost: Cost },
}

/// Anchors for the MIN0 and MAXM schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Anchors {
    /// Minimum binary cost `μ`; MIN0 classifies `c − μ`.
    pub mu: Cost,
    /// Maximum binary cost `M`.
    pub max: Cost,
}

impl Default for Anchors {
    fn default() -> Self {
        Anchors { mu: Cost::ZERO, max: Cost::ZERO }
    }
}

/// Classifies a multiset of three costs. Under MIN0 the costs are compared
/// relative to `anchors.mu`, under MAXM relative to `anchors.max`.
pub fn classify_triple(costs: [Cost; 3], scheme: Scheme, anchors: Anchors) -> Result<TripleType, ClassifyError> {
    use TripleType::*;
    let mut s = costs;
    s.sort();
    let [a, b, c] = s;
    let out = |cost| ClassifyError::OutOfRange { scheme, cost };
    match scheme {
        Scheme::Csp | Scheme::MaxCsp => {
            let top = if scheme == Scheme::Csp { Cost::INF } else { Cost::ONE };
            if let Some(&bad) = s.iter().find(|&&x| !(x.is_zero() || x == top)) {
                return Err(out(bad));
            }
            let high = if scheme == Scheme::Csp { Inf } else { One };
            Ok(match (a == top, b == top, c == top) {
                (false, false, false) => Zero,
                (false, false, true) => Less,
                (false, true, true) => Greater,
                _ => high,
            })
        }
        Scheme::Order => Ok(order_pattern(a, b, c)),
        Scheme::Min0 => {
            if c.is_inf() {
                return Err(out(c));
            }
            if a < anchors.mu {
                return Err(out(a));
            }
            if a > anchors.mu {
                return Ok(Other);
            }
            Ok(match order_pattern(a, b, c) {
                Equal => Zero,
                t => t,
            })
        }
        Scheme::MaxM => {
            if c.is_inf() || c > anchors.max {
                return Err(out(c));
            }
            if c < anchors.max {
                return Ok(Other);
            }
            Ok(match order_pattern(a, b, c) {
                Equal => Top,
                t => t,
            })
        }
    }
}

fn order_pattern(a: Cost, b: Cost, c: Cost) -> TripleType {
    match (a == b, b == c) {
        (true, true) => TripleType::Equal,
        (true, false) => TripleType::Less,
        (false, true) => TripleType::Greater,
        (false, false) => TripleType::Distinct,
    }
}

/// Three assignments to three distinct variables `i < j < k`, with the
/// costs `(c_ij(a,b), c_ik(a,c), c_jk(b,c))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Triangle {
    pub vars: [usize; 3],
    pub values: [usize; 3],
    pub costs: [Cost; 3],
}

impl Triangle {
    pub fn to_value(&self) -> Value {
        json!({
            "vars": self.vars,
            "values": self.values,
            "costs": self.costs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Observed triple types of an instance under one scheme, with the first
/// witness (lexicographic in `(i, j, k, a, b, c)`) for each type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleProfile {
    pub scheme: Scheme,
    pub observed: TypeSet,
    pub witnesses: Vec<(TripleType, Triangle)>,
    pub anchors: Anchors,
}

impl TriangleProfile {
    pub fn witness(&self, t: TripleType) -> Option<&Triangle> {
        self.witnesses.iter().find(|(u, _)| *u == t).map(|(_, w)| w)
    }

    pub fn symbols(&self) -> Vec<&'static str> {
        self.observed.members(self.scheme).into_iter().map(|t| t.symbol(self.scheme)).collect()
    }
}

/// Checks the scheme's instance-wide cost-range precondition and computes
/// the anchors. Implicit (absent) tables contribute zeros to `μ` and `M`.
pub fn anchors_for(inst: &BinaryInstance, scheme: Scheme) -> Result<Anchors, ClassifyError> {
    let mut lo: Option<Cost> = None;
    let mut hi: Option<Cost> = None;
    for (i, j, t) in inst.binary_tables() {
        for a in 0..t.rows() {
            for b in 0..t.cols() {
                let c = t.get(a, b);
                let ok = match scheme {
                    Scheme::Csp => c.is_zero() || c.is_inf(),
                    Scheme::MaxCsp => c.is_zero() || c == Cost::ONE,
                    Scheme::Order => true,
                    Scheme::Min0 | Scheme::MaxM => c.is_finite(),
                };
                if !ok {
                    return Err(ClassifyError::TableOutOfRange { scheme, i, j, a, b, cost: c });
                }
                lo = Some(lo.map_or(c, |x| x.min(c)));
                hi = Some(hi.map_or(c, |x| x.max(c)));
            }
        }
    }
    if !inst.all_pairs_declared() {
        lo = Some(Cost::ZERO);
        hi = Some(hi.map_or(Cost::ZERO, |x| x.max(Cost::ZERO)));
    }
    Ok(Anchors { mu: lo.unwrap_or(Cost::ZERO), max: hi.unwrap_or(Cost::ZERO) })
}

/// Computes the exact set of triple types over all triangles.
pub fn profile(inst: &BinaryInstance, scheme: Scheme) -> Result<TriangleProfile, ClassifyError> {
    let anchors = anchors_for(inst, scheme)?;
    let n = inst.n();
    let full = TypeSet::of(scheme.alphabet());
    let mut observed = TypeSet::new();
    let mut witnesses = Vec::new();
    'outer: for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for a in 0..inst.domain_size(i) {
                    for b in 0..inst.domain_size(j) {
                        let cij = inst.binary(i, a, j, b);
                        for c in 0..inst.domain_size(k) {
                            let costs = [cij, inst.binary(i, a, k, c), inst.binary(j, b, k, c)];
                            let t = classify_triple(costs, scheme, anchors)?;
                            if !observed.contains(t) {
                                observed.insert(t);
                                witnesses.push((t, Triangle { vars: [i, j, k], values: [a, b, c], costs }));
                                // Later triangles cannot add types or earlier witnesses.
                                if observed == full {
                                    break 'outer;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(TriangleProfile { scheme, observed, witnesses, anchors })
}

/// Result of the joint-winner check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JwpReport {
    pub holds: bool,
    pub violation: Option<Triangle>,
}

/// Joint-winner property: in every triangle the two smallest costs are
/// equal. INF takes part as the largest cost.
pub fn check_jwp(inst: &BinaryInstance) -> JwpReport {
    let p = profile(inst, Scheme::Order).expect("ORDER admits every cost");
    let bad = [TripleType::Greater, TripleType::Distinct];
    let violation = p
        .witnesses
        .iter()
        .filter(|(t, _)| bad.contains(t))
        .map(|(_, w)| *w)
        .min_by_key(|w| (w.vars, w.values));
    JwpReport { holds: violation.is_none(), violation }
}

/// Identifiers of the implemented tractable-class solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolverId {
    Sac,
    Trivial,
    Lr,
    MatchingCardinality,
    Min0,
    WeightedMatching,
}

impl SolverId {
    pub fn name(self) -> &'static str {
        match self {
            SolverId::Sac => "sac",
            SolverId::Trivial => "trivial",
            SolverId::Lr => "lr",
            SolverId::MatchingCardinality => "matching-cardinality",
            SolverId::Min0 => "min0",
            SolverId::WeightedMatching => "weighted-matching",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Tractable(SolverId),
    TractableUnimplemented,
    NpHard,
    TrivialSmallDomain,
}

impl Verdict {
    pub fn label(self) -> String {
        match self {
            Verdict::Tractable(id) => format!("TRACTABLE({})", id.name()),
            Verdict::TractableUnimplemented => "TRACTABLE_UNIMPLEMENTED".into(),
            Verdict::NpHard => "NP_HARD".into(),
            Verdict::TrivialSmallDomain => "TRIVIAL_SMALL_DOMAIN".into(),
        }
    }
}

/// A verdict with the dichotomy rule that decided it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ruling {
    pub verdict: Verdict,
    pub rule: &'static str,
}

/// Decides tractability of a profile. `soft_unaries` only matters for CSP,
/// where crisp Boolean instances are small-domain trivial.
pub fn verdict(profile: &TriangleProfile, domain_max: usize, soft_unaries: bool) -> Ruling {
    verdict_for(profile.scheme, profile.observed, domain_max, soft_unaries)
}

/// [`verdict`] on a bare type set.
pub fn verdict_for(scheme: Scheme, s: TypeSet, domain_max: usize, soft_unaries: bool) -> Ruling {
    use TripleType::*;
    use Verdict::*;
    let sub = |types: &[TripleType]| s.is_subset(TypeSet::of(types));
    let ruling = |verdict, rule| Ruling { verdict, rule };
    if domain_max <= 1 {
        return ruling(TrivialSmallDomain, "single-value-domains");
    }
    match scheme {
        Scheme::Csp => {
            if !soft_unaries && domain_max <= 2 {
                return ruling(TrivialSmallDomain, "boolean-csp");
            }
            let rule = if soft_unaries { "csp-soft-unary-dichotomy" } else { "csp-dichotomy" };
            if s.is_superset_of(&[Less, Greater, Zero]) {
                ruling(NpHard, rule)
            } else if sub(&[Less, Greater, Inf]) {
                ruling(Tractable(SolverId::Trivial), rule)
            } else if sub(&[Greater, Zero, Inf]) {
                ruling(Tractable(SolverId::Sac), rule)
            } else {
                debug_assert!(sub(&[Less, Zero, Inf]));
                ruling(TractableUnimplemented, rule)
            }
        }
        Scheme::MaxCsp => {
            let rule = "maxcsp-dichotomy";
            if s.is_superset_of(&[Less, Greater, Zero])
                || s.is_superset_of(&[Less, Greater, One])
                || s.is_superset_of(&[Greater, Zero, One])
            {
                ruling(NpHard, rule)
            } else if sub(&[Greater, One]) {
                ruling(Tractable(SolverId::MatchingCardinality), rule)
            } else if sub(&[Greater, Zero]) {
                ruling(Tractable(SolverId::Lr), rule)
            } else if sub(&[Less, Greater]) {
                ruling(Tractable(SolverId::Trivial), rule)
            } else {
                debug_assert!(sub(&[Less, Zero, One]));
                ruling(TractableUnimplemented, rule)
            }
        }
        Scheme::Order => {
            if sub(&[Less, Equal]) {
                ruling(TractableUnimplemented, "order-dichotomy")
            } else {
                ruling(NpHard, "order-dichotomy")
            }
        }
        Scheme::Min0 | Scheme::MaxM => {
            let (anchor, fast, rule) = match scheme {
                Scheme::Min0 => (Zero, SolverId::Min0, "min0-dichotomy"),
                _ => (Top, SolverId::WeightedMatching, "maxm-dichotomy"),
            };
            if s.contains(Other) {
                ruling(NpHard, rule)
            } else if sub(&[Greater, anchor]) {
                ruling(Tractable(fast), rule)
            } else if sub(&[Distinct, Less, Greater]) {
                ruling(Tractable(SolverId::Trivial), rule)
            } else if sub(&[Less, anchor]) {
                ruling(TractableUnimplemented, rule)
            } else {
                ruling(NpHard, rule)
            }
        }
    }
}

/// Profile report: scheme, observed types, witnesses, verdict and rule.
pub fn report(p: &TriangleProfile, ruling: Ruling, n: usize) -> Value {
    let mut m = Map::new();
    m.insert("scheme".into(), p.scheme.name().into());
    m.insert("observed".into(), json!(p.symbols()));
    let mut w = Map::new();
    for t in p.observed.members(p.scheme) {
        if let Some(tri) = p.witness(t) {
            w.insert(t.symbol(p.scheme).into(), tri.to_value());
        }
    }
    m.insert("witnesses".into(), Value::Object(w));
    match p.scheme {
        Scheme::Min0 => {
            let pairs = (n * n.saturating_sub(1) / 2) as u64;
            m.insert("mu".into(), p.anchors.mu.to_string().into());
            let offset = p.anchors.mu.checked_mul_int(pairs).map(|c| c.to_string()).unwrap_or_else(|e| e.to_string());
            m.insert("offset".into(), offset.into());
        }
        Scheme::MaxM => {
            m.insert("M".into(), p.anchors.max.to_string().into());
        }
        _ => {}
    }
    m.insert("verdict".into(), ruling.verdict.label().into());
    m.insert("rule".into(), ruling.rule.into());
    Value::Object(m)
}

/// Whether the unary tables are outside `{0, ∞}`.
pub fn has_soft_unaries(inst: &BinaryInstance) -> bool {
    !inst.unaries_crisp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use TripleType::*;

    fn c(s: &str) -> Cost {
        s.parse().unwrap()
    }

    fn tri(a: &str, b: &str, d: &str) -> [Cost; 3] {
        [c(a), c(b), c(d)]
    }

    #[test]
    fn order_patterns() {
        let none = Anchors::default();
        assert_eq!(classify_triple(tri("3", "3", "3"), Scheme::Order, none), Ok(Equal));
        assert_eq!(classify_triple(tri("0", "5", "0"), Scheme::Order, none), Ok(Less));
        assert_eq!(classify_triple(tri("3", "1", "2"), Scheme::Order, none), Ok(Distinct));
        assert_eq!(classify_triple(tri("inf", "1", "inf"), Scheme::Order, none), Ok(Greater));
    }

    #[test]
    fn anchored_patterns() {
        let zero = Anchors { mu: Cost::ZERO, max: c("3") };
        assert_eq!(classify_triple(tri("4", "0", "4"), Scheme::Min0, zero), Ok(Greater));
        assert_eq!(classify_triple(tri("1", "2", "3"), Scheme::Min0, zero), Ok(Other));
        assert_eq!(classify_triple(tri("1", "2", "3"), Scheme::MaxM, zero), Ok(Distinct));
        assert_eq!(classify_triple(tri("1", "2", "2"), Scheme::MaxM, zero), Ok(Other));
        assert_eq!(classify_triple(tri("3", "3", "3"), Scheme::MaxM, zero), Ok(Top));
        assert!(classify_triple(tri("4", "0", "0"), Scheme::MaxM, zero).is_err());
    }

    #[test]
    fn crisp_and_maxcsp_ranges() {
        let none = Anchors::default();
        assert_eq!(classify_triple(tri("0", "inf", "inf"), Scheme::Csp, none), Ok(Greater));
        assert_eq!(classify_triple(tri("inf", "inf", "inf"), Scheme::Csp, none), Ok(Inf));
        assert_eq!(classify_triple(tri("1", "1", "1"), Scheme::MaxCsp, none), Ok(One));
        assert!(classify_triple(tri("2", "0", "0"), Scheme::MaxCsp, none).is_err());
        assert!(classify_triple(tri("1", "0", "0"), Scheme::Csp, none).is_err());
    }

    #[test]
    fn small_instances_have_empty_profiles() {
        let inst = BinaryInstance::uniform(2, 3);
        for s in Scheme::ALL {
            assert!(profile(&inst, s).unwrap().observed.is_empty());
        }
    }

    #[test]
    fn zero_instance_is_all_equal() {
        let inst = BinaryInstance::uniform(4, 2);
        let p = profile(&inst, Scheme::Order).unwrap();
        assert_eq!(p.observed, TypeSet::of(&[Equal]));
        assert!(check_jwp(&inst).holds);
    }

    #[test]
    fn jwp_triples() {
        let mut inst = BinaryInstance::uniform(3, 1);
        inst.set_binary(0, 1, vec![vec![c("2")]]).unwrap();
        inst.set_binary(0, 2, vec![vec![c("2")]]).unwrap();
        inst.set_binary(1, 2, vec![vec![c("5")]]).unwrap();
        assert!(check_jwp(&inst).holds);
        let mut bad = BinaryInstance::uniform(3, 1);
        bad.set_binary(0, 1, vec![vec![c("1")]]).unwrap();
        bad.set_binary(0, 2, vec![vec![c("2")]]).unwrap();
        bad.set_binary(1, 2, vec![vec![c("3")]]).unwrap();
        let r = check_jwp(&bad);
        assert!(!r.holds);
        assert_eq!(r.violation.unwrap().vars, [0, 1, 2]);
    }

    #[test]
    fn verdict_examples() {
        let v = |scheme, types: &[TripleType], d| verdict_for(scheme, TypeSet::of(types), d, true).verdict;
        assert_eq!(v(Scheme::Csp, &[Less, Greater, Zero], 3), Verdict::NpHard);
        assert_eq!(v(Scheme::MaxCsp, &[Greater, One], 3), Verdict::Tractable(SolverId::MatchingCardinality));
        assert_eq!(v(Scheme::Order, &[Less, Equal], 3), Verdict::TractableUnimplemented);
        assert_eq!(v(Scheme::MaxM, &[Greater, Top], 3), Verdict::Tractable(SolverId::WeightedMatching));
        assert_eq!(v(Scheme::Min0, &[Other], 3), Verdict::NpHard);
        let crisp = verdict_for(Scheme::Csp, TypeSet::of(&[Less, Greater, Zero]), 2, false);
        assert_eq!(crisp.verdict, Verdict::TrivialSmallDomain);
    }

    #[test]
    fn min0_anchor_counts_implicit_tables() {
        let mut inst = BinaryInstance::uniform(3, 1);
        inst.set_binary(0, 1, vec![vec![c("2")]]).unwrap();
        let a = anchors_for(&inst, Scheme::Min0).unwrap();
        assert_eq!(a.mu, Cost::ZERO);
        assert_eq!(a.max, c("2"));
    }
}
