//! The JSON problem-file format and its validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Constraint, Problem, Table, Variable};
use crate::error::{Error, Result};
use crate::instances::{make_algebra, InstanceSpec};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub algebra: serde_json::Value,
    pub variables: Vec<VariableDoc>,
    pub constraints: Vec<ConstraintDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDoc {
    pub name: String,
    pub domain: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstraintDoc {
    pub id: String,
    pub scope: Vec<String>,
    #[serde(default)]
    pub table: Vec<RowDoc>,
    /// Value of every joint tuple not listed in `table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    /// Domain values, parallel to the constraint's scope.
    pub assign: Vec<String>,
    pub value: serde_json::Value,
}

/// One violated model invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Path into the document, e.g. `constraints[1].table[0].value`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

/// Parses and validates a problem file.
pub fn parse_problem(text: &str) -> Result<Problem> {
    let doc: ProblemDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    build(&doc).map_err(|diags| Error::Invalid(diags.iter().map(ToString::to_string).collect()))
}

/// Every invariant violation of a document; empty when it describes a valid problem.
pub fn validate_document(doc: &ProblemDoc) -> Vec<Diagnostic> {
    build(doc).err().unwrap_or_default()
}

/// Largest table a document may describe.
const MAX_CELLS: usize = 1 << 24;

struct Diagnostics(Vec<Diagnostic>);

impl Diagnostics {
    fn push(&mut self, location: impl Into<String>, message: impl Into<String>) {
        self.0.push(Diagnostic {
            location: location.into(),
            message: message.into(),
        });
    }
}

fn build(doc: &ProblemDoc) -> std::result::Result<Problem, Vec<Diagnostic>> {
    let mut diags = Diagnostics(Vec::new());

    let algebra = match serde_json::from_value::<InstanceSpec>(doc.algebra.clone()) {
        Ok(spec) => match make_algebra(&spec) {
            Ok(alg) => Some((spec, alg)),
            Err(e) => {
                diags.push("algebra", e.to_string());
                None
            }
        },
        Err(e) => {
            diags.push("algebra", format!("malformed algebra specification: {e}"));
            None
        }
    };

    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, v) in doc.variables.iter().enumerate() {
        let at = format!("variables[{i}]");
        if index.insert(v.name.as_str(), i).is_some() {
            diags.push(&at, format!("duplicate variable name {:?}", v.name));
        }
        if v.domain.is_empty() {
            diags.push(format!("{at}.domain"), format!("domain of {} is empty", v.name));
        }
        let mut seen = BTreeSet::new();
        for d in &v.domain {
            if !seen.insert(d) {
                diags.push(format!("{at}.domain"), format!("duplicate value {d:?} in the domain of {}", v.name));
            }
        }
    }

    let mut covered = BTreeSet::new();
    let mut ids = BTreeSet::new();
    let mut constraints = Vec::new();
    for (ci, c) in doc.constraints.iter().enumerate() {
        let at = format!("constraints[{ci}]");
        if !ids.insert(c.id.as_str()) {
            diags.push(&at, format!("duplicate constraint id {:?}", c.id));
        }
        let mut scope = Vec::new();
        let mut scope_ok = true;
        for (si, name) in c.scope.iter().enumerate() {
            match index.get(name.as_str()) {
                Some(&v) if scope.contains(&v) => {
                    diags.push(format!("{at}.scope[{si}]"), format!("{name} appears twice in the scope of {}", c.id));
                    scope_ok = false;
                }
                Some(&v) => {
                    scope.push(v);
                    covered.insert(v);
                }
                None => {
                    diags.push(format!("{at}.scope[{si}]"), format!("constraint {} names undeclared variable {name:?}", c.id));
                    scope_ok = false;
                }
            }
        }
        let Some((_, alg)) = &algebra else { continue };
        if !scope_ok {
            continue;
        }

        let dims: Vec<usize> = scope.iter().map(|&v| doc.variables[v].domain.len()).collect();
        let size = match dims.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)) {
            Some(size) if size <= MAX_CELLS => size,
            _ => {
                diags.push(&at, format!("constraint {}: table over {} variables is too large", c.id, dims.len()));
                continue;
            }
        };
        let mut cells: Vec<Option<Value>> = vec![None; size];
        let mut table_ok = true;
        let parse = |value: &serde_json::Value, loc: String, diags: &mut Diagnostics| match alg.parse_value(value) {
            Ok(v) => Some(v),
            Err(e) => {
                diags.push(loc, format!("constraint {}: {e}", c.id));
                None
            }
        };
        for (ri, row) in c.table.iter().enumerate() {
            let row_at = format!("{at}.table[{ri}]");
            if row.assign.len() != scope.len() {
                diags.push(
                    format!("{row_at}.assign"),
                    format!("constraint {}: row has {} values for a scope of {}", c.id, row.assign.len(), scope.len()),
                );
                table_ok = false;
                continue;
            }
            let mut idx = 0;
            let mut row_ok = true;
            for ((value, &v), &n) in row.assign.iter().zip(&scope).zip(&dims) {
                match doc.variables[v].domain.iter().position(|d| d == value) {
                    Some(d) => idx = idx * n + d,
                    None => {
                        diags.push(
                            format!("{row_at}.assign"),
                            format!("constraint {}: {value:?} is not in the domain of {}", c.id, doc.variables[v].name),
                        );
                        row_ok = false;
                    }
                }
            }
            let value = parse(&row.value, format!("{row_at}.value"), &mut diags);
            if !row_ok || value.is_none() {
                table_ok = false;
                continue;
            }
            if cells[idx].is_some() {
                diags.push(&row_at, format!("constraint {}: duplicate row {:?}", c.id, row.assign));
                table_ok = false;
            }
            cells[idx] = value;
        }
        let default = match &c.default {
            Some(d) => match parse(d, format!("{at}.default"), &mut diags) {
                Some(v) => Some(v),
                None => {
                    table_ok = false;
                    None
                }
            },
            None => None,
        };
        if !table_ok {
            continue;
        }
        let missing = cells.iter().filter(|c| c.is_none()).count();
        if missing > 0 && default.is_none() {
            diags.push(
                format!("{at}.table"),
                format!(
                    "constraint {} lists {} of {size} entries and has no default",
                    c.id,
                    size - missing
                ),
            );
            continue;
        }
        let cells = cells
            .into_iter()
            .map(|c| c.or_else(|| default.clone()).expect("default fills the gaps"))
            .collect();
        constraints.push(Constraint::new(c.id.clone(), Table::new(scope, dims, cells)));
    }

    for (i, v) in doc.variables.iter().enumerate() {
        if !covered.contains(&i) {
            diags.push(format!("variables[{i}]"), format!("variable {} is in no constraint's scope", v.name));
        }
    }

    match algebra {
        Some((spec, alg)) if diags.0.is_empty() => Ok(Problem::from_parts(
            spec,
            alg,
            doc.variables
                .iter()
                .map(|v| Variable {
                    name: v.name.clone(),
                    domain: v.domain.clone(),
                })
                .collect(),
            constraints,
        )),
        _ => Err(diags.0),
    }
}
