//! Instance data model: binary VCSP instances, count-based instances and
//! their evaluation. Values are indices into the declared domain lists.

use std::collections::HashMap;

use thiserror::Error;

use crate::cost::{Cost, CostError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("variable {0} has an empty domain")]
    EmptyDomain(usize),
    #[error("variable index {index} out of range (n = {n})")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("value index {value} out of range for variable {var} (domain size {size})")]
    ValueOutOfRange { var: usize, value: usize, size: usize },
    #[error("{what}: expected {expected} entries, found {found}")]
    Ragged { what: String, expected: usize, found: usize },
    #[error("duplicate {0}")]
    Duplicate(String),
    #[error("binary table on a single variable {0}")]
    SelfPair(usize),
    #[error("assignment has {found} entries, instance has {expected} variables")]
    SolutionLength { expected: usize, found: usize },
    #[error("assignment-set {0} is empty")]
    EmptySet(usize),
    #[error("count function has finite entries at {0} and {1} with an infinite entry between")]
    NonContiguousSupport(usize, usize),
    #[error(transparent)]
    Cost(#[from] CostError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub domain: Vec<String>,
}

impl Variable {
    pub fn new(name: impl Into<String>, domain: Vec<String>) -> Variable {
        Variable { name: name.into(), domain }
    }

    /// A variable whose values are named `"0"`, `"1"`, ...
    pub fn indexed(name: impl Into<String>, size: usize) -> Variable {
        Variable::new(name, (0..size).map(|a| a.to_string()).collect())
    }
}

fn check_variables(vars: &[Variable]) -> Result<(), ModelError> {
    for (i, v) in vars.iter().enumerate() {
        if v.domain.is_empty() {
            return Err(ModelError::EmptyDomain(i));
        }
    }
    Ok(())
}

/// Checks that `x` assigns every variable a value from its domain.
pub fn check_assignment(vars: &[Variable], x: &[usize]) -> Result<(), ModelError> {
    if x.len() != vars.len() {
        return Err(ModelError::SolutionLength { expected: vars.len(), found: x.len() });
    }
    for (i, (&a, v)) in x.iter().zip(vars).enumerate() {
        if a >= v.domain.len() {
            return Err(ModelError::ValueOutOfRange { var: i, value: a, size: v.domain.len() });
        }
    }
    Ok(())
}

/// Dense row-major cost table `c(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    rows: usize,
    cols: usize,
    data: Vec<Cost>,
}

impl Table {
    pub fn from_rows(rows: Vec<Vec<Cost>>) -> Table {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data: Vec<Cost> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), r * c, "ragged table");
        Table { rows: r, cols: c, data }
    }

    pub fn filled(rows: usize, cols: usize, value: Cost) -> Table {
        Table { rows, cols, data: vec![value; rows * cols] }
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> Cost {
        self.data[a * self.cols + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: Cost) {
        self.data[a * self.cols + b] = value;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Cost] {
        &self.data
    }

    pub fn row(&self, a: usize) -> &[Cost] {
        &self.data[a * self.cols..(a + 1) * self.cols]
    }

    pub fn transposed(&self) -> Table {
        let mut t = Table::filled(self.cols, self.rows, Cost::ZERO);
        for a in 0..self.rows {
            for b in 0..self.cols {
                t.set(b, a, self.get(a, b));
            }
        }
        t
    }

    pub fn to_rows(&self) -> Vec<Vec<Cost>> {
        (0..self.rows).map(|a| self.row(a).to_vec()).collect()
    }
}

/// A binary VCSP instance. Absent unary or binary tables denote the
/// all-zero function; presence is remembered so documents round-trip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryInstance {
    variables: Vec<Variable>,
    unary: Vec<Option<Vec<Cost>>>,
    // Upper-triangular: index i * n + j for i < j.
    binary: Vec<Option<Table>>,
}

impl BinaryInstance {
    pub fn new(variables: Vec<Variable>) -> Result<BinaryInstance, ModelError> {
        check_variables(&variables)?;
        let n = variables.len();
        Ok(BinaryInstance { unary: vec![None; n], binary: vec![None; n * n], variables })
    }

    /// `n` variables named `x0..`, each with `d` values.
    pub fn uniform(n: usize, d: usize) -> BinaryInstance {
        let vars = (0..n).map(|i| Variable::indexed(format!("x{i}"), d)).collect();
        BinaryInstance::new(vars).expect("uniform instance needs d >= 1")
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn domain_size(&self, i: usize) -> usize {
        self.variables[i].domain.len()
    }

    pub fn domain_sizes(&self) -> Vec<usize> {
        self.variables.iter().map(|v| v.domain.len()).collect()
    }

    pub fn domain_max(&self) -> usize {
        self.variables.iter().map(|v| v.domain.len()).max().unwrap_or(0)
    }

    fn check_var(&self, i: usize) -> Result<(), ModelError> {
        if i >= self.n() {
            return Err(ModelError::VariableOutOfRange { index: i, n: self.n() });
        }
        Ok(())
    }

    pub fn set_unary(&mut self, i: usize, costs: Vec<Cost>) -> Result<(), ModelError> {
        self.check_var(i)?;
        if costs.len() != self.domain_size(i) {
            return Err(ModelError::Ragged {
                what: format!("unary table of variable {i}"),
                expected: self.domain_size(i),
                found: costs.len(),
            });
        }
        if self.unary[i].is_some() {
            return Err(ModelError::Duplicate(format!("unary table for variable {i}")));
        }
        self.unary[i] = Some(costs);
        Ok(())
    }

    /// Installs `c_ij` given as `rows[a][b]` for `a ∈ D_i`, `b ∈ D_j`.
    /// Either orientation of the pair is accepted.
    pub fn set_binary(&mut self, i: usize, j: usize, rows: Vec<Vec<Cost>>) -> Result<(), ModelError> {
        self.check_var(i)?;
        self.check_var(j)?;
        if i == j {
            return Err(ModelError::SelfPair(i));
        }
        let what = || format!("binary table ({i},{j})");
        if rows.len() != self.domain_size(i) {
            return Err(ModelError::Ragged { what: what(), expected: self.domain_size(i), found: rows.len() });
        }
        for r in &rows {
            if r.len() != self.domain_size(j) {
                return Err(ModelError::Ragged { what: what(), expected: self.domain_size(j), found: r.len() });
            }
        }
        let table = Table::from_rows(rows);
        let (lo, hi, table) = if i < j { (i, j, table) } else { (j, i, table.transposed()) };
        let slot = &mut self.binary[lo * self.variables.len() + hi];
        if slot.is_some() {
            return Err(ModelError::Duplicate(format!("binary table for pair ({lo},{hi})")));
        }
        *slot = Some(table);
        Ok(())
    }

    /// Overwrites one entry of a declared table, either orientation.
    pub fn set_binary_entry(&mut self, i: usize, a: usize, j: usize, b: usize, cost: Cost) -> Result<(), ModelError> {
        let n = self.variables.len();
        let (lo, hi, a, b) = if i < j { (i, j, a, b) } else { (j, i, b, a) };
        match self.binary.get_mut(lo * n + hi).and_then(Option::as_mut) {
            Some(t) if a < t.rows() && b < t.cols() => {
                t.set(a, b, cost);
                Ok(())
            }
            _ => Err(ModelError::Ragged { what: format!("entry ({a},{b}) of binary table ({lo},{hi})"), expected: 0, found: 0 }),
        }
    }

    /// Unary table if one was declared.
    pub fn unary_table(&self, i: usize) -> Option<&[Cost]> {
        self.unary[i].as_deref()
    }

    #[inline]
    pub fn unary(&self, i: usize, a: usize) -> Cost {
        self.unary[i].as_ref().map_or(Cost::ZERO, |t| t[a])
    }

    /// Declared table for `i < j`, oriented `[a ∈ D_i][b ∈ D_j]`.
    pub fn binary_table(&self, i: usize, j: usize) -> Option<&Table> {
        debug_assert!(i < j);
        self.binary[i * self.variables.len() + j].as_ref()
    }

    /// `c_ij(a, b)` for any orientation of the pair.
    #[inline]
    pub fn binary(&self, i: usize, a: usize, j: usize, b: usize) -> Cost {
        let n = self.variables.len();
        if i < j {
            self.binary[i * n + j].as_ref().map_or(Cost::ZERO, |t| t.get(a, b))
        } else {
            self.binary[j * n + i].as_ref().map_or(Cost::ZERO, |t| t.get(b, a))
        }
    }

    /// Declared binary tables as `(i, j, table)` with `i < j`, in order.
    pub fn binary_tables(&self) -> impl Iterator<Item = (usize, usize, &Table)> + '_ {
        let n = self.variables.len();
        self.binary
            .iter()
            .enumerate()
            .filter_map(move |(k, t)| t.as_ref().map(|t| (k / n, k % n, t)))
    }

    /// Whether every pair of variables carries a declared table.
    pub fn all_pairs_declared(&self) -> bool {
        let n = self.n();
        (0..n).all(|i| (i + 1..n).all(|j| self.binary_table(i, j).is_some()))
    }

    /// Whether every unary cost is 0 or INF.
    pub fn unaries_crisp(&self) -> bool {
        self.unary.iter().flatten().flatten().all(|c| c.is_zero() || c.is_inf())
    }

    /// Whether every declared binary cost is 0 or INF.
    pub fn binaries_crisp(&self) -> bool {
        self.binary_tables().all(|(_, _, t)| t.entries().iter().all(|c| c.is_zero() || c.is_inf()))
    }

    pub fn evaluate(&self, x: &[usize]) -> Result<Cost, ModelError> {
        check_assignment(&self.variables, x)?;
        let mut total = Cost::ZERO;
        for (i, &a) in x.iter().enumerate() {
            total = total.checked_add(self.unary(i, a))?;
        }
        for (i, j, t) in self.binary_tables() {
            total = total.checked_add(t.get(x[i], x[j]))?;
        }
        Ok(total)
    }
}

/// A cost function of a count `0..=s`, finite exactly on an interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CountFunction(Vec<Cost>);

impl CountFunction {
    pub fn new(values: Vec<Cost>) -> Result<CountFunction, ModelError> {
        let finite: Vec<usize> = (0..values.len()).filter(|&m| values[m].is_finite()).collect();
        for w in finite.windows(2) {
            if w[1] != w[0] + 1 {
                return Err(ModelError::NonContiguousSupport(w[0], w[1]));
            }
        }
        Ok(CountFunction(values))
    }

    pub fn zero(s: usize) -> CountFunction {
        CountFunction(vec![Cost::ZERO; s + 1])
    }

    pub fn values(&self) -> &[Cost] {
        &self.0
    }

    /// Largest admissible count `s` (table length minus one).
    pub fn max_count(&self) -> usize {
        self.0.len() - 1
    }

    /// `g(m)`, INF beyond the table.
    #[inline]
    pub fn at(&self, m: usize) -> Cost {
        self.0.get(m).copied().unwrap_or(Cost::INF)
    }

    /// Endpoints `[l, u]` of the finite support, `None` when nowhere finite.
    pub fn support(&self) -> Option<(usize, usize)> {
        let l = self.0.iter().position(|c| c.is_finite())?;
        let u = self.0.iter().rposition(|c| c.is_finite())?;
        Some((l, u))
    }

    /// Pointwise sum of two functions of equal length.
    pub fn checked_sum(&self, other: &CountFunction) -> Result<CountFunction, ModelError> {
        if self.0.len() != other.0.len() {
            return Err(ModelError::Ragged {
                what: "count function sum".into(),
                expected: self.0.len(),
                found: other.0.len(),
            });
        }
        let v = self.0.iter().zip(&other.0).map(|(a, b)| a.checked_add(*b)).collect::<Result<Vec<_>, _>>()?;
        CountFunction::new(v)
    }
}

/// A set of `(variable, value)` assignments with a count cost function.
/// Members are kept sorted and unique.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentSet {
    members: Vec<(usize, usize)>,
    distinct_vars: usize,
    g: CountFunction,
}

impl AssignmentSet {
    pub fn new(mut members: Vec<(usize, usize)>, g: CountFunction) -> Result<AssignmentSet, ModelError> {
        members.sort_unstable();
        members.dedup();
        let mut distinct_vars = 0;
        let mut last = None;
        for &(v, _) in &members {
            if last != Some(v) {
                distinct_vars += 1;
                last = Some(v);
            }
        }
        if g.values().len() != distinct_vars + 1 {
            return Err(ModelError::Ragged {
                what: "count function".into(),
                expected: distinct_vars + 1,
                found: g.values().len(),
            });
        }
        Ok(AssignmentSet { members, distinct_vars, g })
    }

    pub fn members(&self) -> &[(usize, usize)] {
        &self.members
    }

    /// Number of distinct variables among the members.
    pub fn s(&self) -> usize {
        self.distinct_vars
    }

    pub fn g(&self) -> &CountFunction {
        &self.g
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `|x ∩ A|`.
    pub fn hits(&self, x: &[usize]) -> usize {
        self.members.iter().filter(|&&(v, a)| x[v] == a).count()
    }
}

/// An instance in count form: `constant + Σ g_i(|x ∩ A_i|)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountInstance {
    variables: Vec<Variable>,
    sets: Vec<AssignmentSet>,
    constant: Cost,
}

impl CountInstance {
    /// Validates the sets against the domains and merges identical sets by
    /// summing their functions (first occurrence keeps its position).
    pub fn new(variables: Vec<Variable>, sets: Vec<AssignmentSet>, constant: Cost) -> Result<CountInstance, ModelError> {
        check_variables(&variables)?;
        let n = variables.len();
        let mut merged: Vec<AssignmentSet> = Vec::with_capacity(sets.len());
        let mut seen: HashMap<Vec<(usize, usize)>, usize> = HashMap::new();
        for (k, set) in sets.into_iter().enumerate() {
            if set.is_empty() {
                return Err(ModelError::EmptySet(k));
            }
            for &(v, a) in set.members() {
                if v >= n {
                    return Err(ModelError::VariableOutOfRange { index: v, n });
                }
                if a >= variables[v].domain.len() {
                    return Err(ModelError::ValueOutOfRange { var: v, value: a, size: variables[v].domain.len() });
                }
            }
            match seen.get(set.members()) {
                Some(&at) => {
                    let g = merged[at].g.checked_sum(&set.g)?;
                    merged[at].g = g;
                }
                None => {
                    seen.insert(set.members.clone(), merged.len());
                    merged.push(set);
                }
            }
        }
        Ok(CountInstance { variables, sets: merged, constant })
    }

    pub fn n(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn sets(&self) -> &[AssignmentSet] {
        &self.sets
    }

    pub fn constant(&self) -> Cost {
        self.constant
    }

    pub fn domain_sizes(&self) -> Vec<usize> {
        self.variables.iter().map(|v| v.domain.len()).collect()
    }

    /// Offsets mapping `(v, a)` to `offsets[v] + a` in `0..universe_size()`.
    pub fn assignment_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.variables
            .iter()
            .map(|v| {
                let o = acc;
                acc += v.domain.len();
                o
            })
            .collect()
    }

    /// Total number of `(variable, value)` pairs.
    pub fn universe_size(&self) -> usize {
        self.variables.iter().map(|v| v.domain.len()).sum()
    }

    pub fn evaluate(&self, x: &[usize]) -> Result<Cost, ModelError> {
        check_assignment(&self.variables, x)?;
        let mut total = self.constant;
        for set in &self.sets {
            total = total.checked_add(set.g.at(set.hits(x)))?;
        }
        Ok(total)
    }
}
