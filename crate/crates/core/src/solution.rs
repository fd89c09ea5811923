//! Solver results shared by every solving layer.

use serde_json::{Map, Value};

use crate::cost::Cost;
use crate::format::SOLUTION_FORMAT;

/// An assignment with its exact cost, the solver that produced it and
/// free-form certificate notes (matching used, chosen `k`, ...).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub assignment: Vec<usize>,
    pub cost: Cost,
    pub solver: String,
    pub certificate: Map<String, Value>,
}

impl SolveResult {
    pub fn new(solver: impl Into<String>, assignment: Vec<usize>, cost: Cost) -> SolveResult {
        SolveResult { assignment, cost, solver: solver.into(), certificate: Map::new() }
    }

    pub fn note(mut self, key: &str, value: impl Into<Value>) -> SolveResult {
        self.certificate.insert(key.to_string(), value.into());
        self
    }

    /// The solution document, without verdicts.
    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("format".into(), SOLUTION_FORMAT.into());
        m.insert("assignment".into(), self.assignment.clone().into());
        m.insert("cost".into(), self.cost.to_string().into());
        m.insert("solver".into(), self.solver.clone().into());
        m.insert("certificate".into(), Value::Object(self.certificate.clone()));
        Value::Object(m)
    }
}
