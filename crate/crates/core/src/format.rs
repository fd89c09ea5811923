//! JSON documents for instances and solutions, and the canonical printer
//! used for every document this crate writes.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::cost::Cost;
use crate::model::{AssignmentSet, BinaryInstance, CountFunction, CountInstance, ModelError, Variable};

pub const BINARY_FORMAT: &str = "vcsp-binary/1";
pub const COUNT_FORMAT: &str = "vcsp-cfc/1";
pub const SOLUTION_FORMAT: &str = "vcsp-solution/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("unknown format {0:?} (expected \"vcsp-binary/1\" or \"vcsp-cfc/1\")")]
    UnknownFormat(String),
    #[error("{context}: {source}")]
    Invalid {
        context: String,
        #[source]
        source: ModelError,
    },
}

fn invalid(context: impl Into<String>) -> impl FnOnce(ModelError) -> FormatError {
    let context = context.into();
    move |source| FormatError::Invalid { context, source }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableDoc {
    name: String,
    domain: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UnaryDoc {
    var: usize,
    costs: Vec<Cost>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinaryDoc {
    i: usize,
    j: usize,
    costs: Vec<Vec<Cost>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BinaryDocument {
    format: String,
    variables: Vec<VariableDoc>,
    #[serde(default)]
    unary: Vec<UnaryDoc>,
    #[serde(default)]
    binary: Vec<BinaryDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    assignments: Vec<[usize; 2]>,
    g: Vec<Cost>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountDocument {
    format: String,
    variables: Vec<VariableDoc>,
    #[serde(default)]
    constant: Cost,
    #[serde(default)]
    sets: Vec<SetDoc>,
}

#[derive(Deserialize)]
struct Probe {
    format: String,
}

/// A parsed instance document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Binary(BinaryInstance),
    Count(CountInstance),
}

fn variables_from(docs: Vec<VariableDoc>) -> Vec<Variable> {
    docs.into_iter().map(|v| Variable::new(v.name, v.domain)).collect()
}

fn variables_to(vars: &[Variable]) -> Vec<VariableDoc> {
    vars.iter().map(|v| VariableDoc { name: v.name.clone(), domain: v.domain.clone() }).collect()
}

/// Parses either instance format, dispatching on the `format` field.
pub fn parse_instance(text: &str) -> Result<Instance, FormatError> {
    let probe: Probe = serde_json::from_str(text)?;
    match probe.format.as_str() {
        BINARY_FORMAT => parse_binary(text).map(Instance::Binary),
        COUNT_FORMAT => parse_count(text).map(Instance::Count),
        other => Err(FormatError::UnknownFormat(other.to_string())),
    }
}

pub fn parse_binary(text: &str) -> Result<BinaryInstance, FormatError> {
    let doc: BinaryDocument = serde_json::from_str(text)?;
    if doc.format != BINARY_FORMAT {
        return Err(FormatError::UnknownFormat(doc.format));
    }
    let mut inst = BinaryInstance::new(variables_from(doc.variables)).map_err(invalid("variables"))?;
    for (k, u) in doc.unary.into_iter().enumerate() {
        inst.set_unary(u.var, u.costs).map_err(invalid(format!("unary[{k}]")))?;
    }
    for (k, b) in doc.binary.into_iter().enumerate() {
        inst.set_binary(b.i, b.j, b.costs).map_err(invalid(format!("binary[{k}]")))?;
    }
    Ok(inst)
}

pub fn parse_count(text: &str) -> Result<CountInstance, FormatError> {
    let doc: CountDocument = serde_json::from_str(text)?;
    if doc.format != COUNT_FORMAT {
        return Err(FormatError::UnknownFormat(doc.format));
    }
    let mut sets = Vec::with_capacity(doc.sets.len());
    for (k, s) in doc.sets.into_iter().enumerate() {
        let ctx = format!("sets[{k}]");
        let g = CountFunction::new(s.g).map_err(invalid(ctx.clone()))?;
        let members = s.assignments.into_iter().map(|[v, a]| (v, a)).collect();
        sets.push(AssignmentSet::new(members, g).map_err(invalid(ctx))?);
    }
    CountInstance::new(variables_from(doc.variables), sets, doc.constant).map_err(invalid("sets"))
}

pub fn binary_to_value(inst: &BinaryInstance) -> Value {
    let doc = BinaryDocument {
        format: BINARY_FORMAT.into(),
        variables: variables_to(inst.variables()),
        unary: (0..inst.n())
            .filter_map(|i| inst.unary_table(i).map(|t| UnaryDoc { var: i, costs: t.to_vec() }))
            .collect(),
        binary: inst.binary_tables().map(|(i, j, t)| BinaryDoc { i, j, costs: t.to_rows() }).collect(),
    };
    serde_json::to_value(doc).expect("binary document serializes")
}

pub fn count_to_value(inst: &CountInstance) -> Value {
    let doc = CountDocument {
        format: COUNT_FORMAT.into(),
        variables: variables_to(inst.variables()),
        constant: inst.constant(),
        sets: inst
            .sets()
            .iter()
            .map(|s| SetDoc {
                assignments: s.members().iter().map(|&(v, a)| [v, a]).collect(),
                g: s.g().values().to_vec(),
            })
            .collect(),
    };
    serde_json::to_value(doc).expect("count document serializes")
}

pub fn instance_to_value(inst: &Instance) -> Value {
    match inst {
        Instance::Binary(b) => binary_to_value(b),
        Instance::Count(c) => count_to_value(c),
    }
}

pub fn write_binary(inst: &BinaryInstance) -> String {
    to_canonical_string(&binary_to_value(inst))
}

pub fn write_count(inst: &CountInstance) -> String {
    to_canonical_string(&count_to_value(inst))
}

pub fn write_instance(inst: &Instance) -> String {
    to_canonical_string(&instance_to_value(inst))
}

/// Pretty-prints with two-space indentation, except that arrays holding no
/// objects stay on one line. Ends with a newline.
pub fn to_canonical_string(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn contains_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(contains_object),
        _ => false,
    }
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, level + 1, out);
                if k + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(level, out);
            out.push('}');
        }
        Value::Array(items) if contains_object(v) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(item, level + 1, out);
                if k + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(level, out);
            out.push(']');
        }
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push_str(", ");
                }
                write_value(item, level, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"format":"vcsp-binary/1","variables":[{"name":"x","domain":["a"]}]}"#;

    #[test]
    fn minimal_binary_document() {
        match parse_instance(MINIMAL).unwrap() {
            Instance::Binary(b) => assert_eq!(b.n(), 1),
            Instance::Count(_) => panic!("wrong kind"),
        }
    }

    #[test]
    fn inf_literal() {
        let text = r#"{"format":"vcsp-binary/1","variables":[{"name":"x","domain":["a","b"]}],
            "unary":[{"var":0,"costs":["inf","1/2"]}]}"#;
        let b = parse_binary(text).unwrap();
        assert_eq!(b.unary(0, 0), Cost::INF);
        assert_eq!(b.unary(0, 1), Cost::ratio(1, 2).unwrap());
    }

    #[test]
    fn identical_sets_merge_on_load() {
        let text = r#"{"format":"vcsp-cfc/1","variables":[{"name":"x","domain":["0","1"]}],
            "constant":"0","sets":[{"assignments":[[0,1]],"g":["0","1"]},{"assignments":[[0,1]],"g":["0","1"]}]}"#;
        let c = parse_count(text).unwrap();
        assert_eq!(c.sets().len(), 1);
        assert_eq!(c.sets()[0].g().values(), &[Cost::ZERO, Cost::int(2)]);
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_instance("{\"format\": \n  \"vcsp-binary/1\",,}").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn semantic_errors() {
        let ragged = r#"{"format":"vcsp-binary/1","variables":[{"name":"x","domain":["a","b"]}],
            "unary":[{"var":0,"costs":["1"]}]}"#;
        assert!(matches!(parse_binary(ragged), Err(FormatError::Invalid { .. })));
        let out_of_domain = r#"{"format":"vcsp-cfc/1","variables":[{"name":"x","domain":["0"]}],
            "sets":[{"assignments":[[0,3]],"g":["0","1"]}]}"#;
        assert!(matches!(parse_count(out_of_domain), Err(FormatError::Invalid { .. })));
        let bad_len = r#"{"format":"vcsp-cfc/1","variables":[{"name":"x","domain":["0"]}],
            "sets":[{"assignments":[[0,0]],"g":["0"]}]}"#;
        assert!(matches!(parse_count(bad_len), Err(FormatError::Invalid { .. })));
        assert!(matches!(parse_instance(r#"{"format":"nope"}"#), Err(FormatError::UnknownFormat(_))));
    }

    #[test]
    fn canonical_round_trip() {
        let text = r#"{"format":"vcsp-binary/1","variables":[{"name":"x","domain":["a","b"]},{"name":"y","domain":["c"]}],
            "unary":[{"var":1,"costs":["3"]}],"binary":[{"i":0,"j":1,"costs":[["inf"],["2/6"]]}]}"#;
        let once = write_instance(&parse_instance(text).unwrap());
        let twice = write_instance(&parse_instance(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.contains(r#"[["inf"], ["1/3"]]"#), "{once}");
    }
}
