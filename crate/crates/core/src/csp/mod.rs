//! Soft constraint problems: variables with finite domains and table
//! constraints valued in a preference algebra.

mod document;
pub(crate) mod table;

use std::collections::BTreeMap;

use crate::algebra::{Algebra, PreferenceAlgebra};
use crate::error::{Error, Result};
use crate::instances::InstanceSpec;
use crate::value::Value;

pub use document::{parse_problem, validate_document, ConstraintDoc, Diagnostic, ProblemDoc, RowDoc, VariableDoc};
pub use table::Table;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub domain: Vec<String>,
}

/// A preference function over the joint assignments of its support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub id: String,
    pub table: Table<Value>,
}

impl Constraint {
    pub fn new(id: impl Into<String>, table: Table<Value>) -> Self {
        Constraint { id: id.into(), table }
    }

    pub fn constant(id: impl Into<String>, value: Value) -> Self {
        Constraint::new(id, Table::constant(value))
    }

    /// Variable indices the constraint depends on, in table order.
    pub fn support(&self) -> &[usize] {
        self.table.scope()
    }

    pub fn arity(&self) -> usize {
        self.support().len()
    }

    /// The value of an empty-support constraint.
    pub fn as_constant(&self) -> Option<&Value> {
        self.table.as_constant()
    }
}

/// A partial assignment: variable index → domain value index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(Vec<Option<usize>>);

impl Assignment {
    pub fn empty(variables: usize) -> Self {
        Assignment(vec![None; variables])
    }

    pub fn get(&self, var: usize) -> Option<usize> {
        self.0[var]
    }

    pub fn set(&mut self, var: usize, value: usize) {
        self.0[var] = Some(value);
    }

    /// `self · (var = value)`.
    pub fn with(&self, var: usize, value: usize) -> Self {
        let mut next = self.clone();
        next.set(var, value);
        next
    }

    pub fn is_total(&self) -> bool {
        self.0.iter().all(Option::is_some)
    }

    pub fn slots(&self) -> &[Option<usize>] {
        &self.0
    }
}

/// Looks up `c` at `t`.
pub fn evaluate(p: &Problem, c: &Constraint, t: &Assignment) -> Result<Value> {
    c.table
        .lookup(t.slots())
        .cloned()
        .map_err(|var| Error::MissingAssignment(p.variables[var].name.clone()))
}

/// Pointwise `c1 ⊗ c2` over the ordered union of the supports.
pub fn combine_constraints(alg: &dyn PreferenceAlgebra, c1: &Constraint, c2: &Constraint) -> Constraint {
    Constraint::new(
        format!("{}*{}", c1.id, c2.id),
        c1.table.zip_with(&c2.table, |a, b| alg.combine(a, b)),
    )
}

/// `⊗` of a list of constraints; the empty combination is the constant `1`.
pub fn combine_all<'c>(alg: &dyn PreferenceAlgebra, constraints: impl IntoIterator<Item = &'c Constraint>) -> Constraint {
    let mut ids = Vec::new();
    let mut table = Table::constant(alg.identity());
    for c in constraints {
        ids.push(c.id.as_str());
        table = table.zip_with(&c.table, |a, b| alg.combine(a, b));
    }
    let id = if ids.is_empty() { "1".to_string() } else { ids.join("*") };
    Constraint::new(id, table)
}

/// Pointwise `c1 ⊖ c2` over the ordered union of the supports.
pub fn residuate_constraints(alg: &dyn PreferenceAlgebra, c1: &Constraint, c2: &Constraint) -> Result<Constraint> {
    let mut failure = None;
    let table = c1.table.zip_with(&c2.table, |a, b| match alg.residual(a, b) {
        Ok(r) => r,
        Err(e) => {
            failure.get_or_insert(e);
            alg.bottom()
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(Constraint::new(format!("{}-{}", c1.id, c2.id), table)),
    }
}

/// `c⇓_v = ⋁_{d ∈ D_v} c[v := d]`.
pub fn project(alg: &dyn PreferenceAlgebra, c: &Constraint, var: usize) -> Result<Constraint> {
    c.table
        .eliminate(var, |column| alg.join(column))
        .map(|table| Constraint::new(format!("{}/{var}", c.id), table))
        .ok_or_else(|| Error::NotInSupport {
            constraint: c.id.clone(),
            variable: var,
        })
}

/// Projection that treats a constraint not mentioning `var` as constant in it.
pub(crate) fn project_out(alg: &dyn PreferenceAlgebra, c: &Constraint, var: usize) -> Constraint {
    if c.table.contains_var(var) {
        project(alg, c, var).expect("variable in support")
    } else {
        c.clone()
    }
}

/// A validated soft CSP `⟨V, D, C⟩`.
#[derive(Debug, Clone)]
pub struct Problem {
    spec: InstanceSpec,
    algebra: Algebra,
    variables: Vec<Variable>,
    constraints: Vec<Constraint>,
}

impl Problem {
    /// Assembles a problem from parts that already satisfy the model
    /// invariants; use [`parse_problem`] for untrusted input.
    pub fn from_parts(
        spec: InstanceSpec,
        algebra: Algebra,
        variables: Vec<Variable>,
        constraints: Vec<Constraint>,
    ) -> Self {
        Problem {
            spec,
            algebra,
            variables,
            constraints,
        }
    }

    pub fn spec(&self) -> &InstanceSpec {
        &self.spec
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn alg(&self) -> &dyn PreferenceAlgebra {
        &*self.algebra
    }

    pub fn variables(&self) -> &[Variable] {
        &self.variables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v.name == name)
    }

    pub fn var_name(&self, var: usize) -> &str {
        &self.variables[var].name
    }

    pub fn empty_assignment(&self) -> Assignment {
        Assignment::empty(self.variables.len())
    }

    /// Number of full assignments, saturating.
    pub fn search_space(&self) -> u128 {
        self.variables
            .iter()
            .fold(1u128, |acc, v| acc.saturating_mul(v.domain.len() as u128))
    }

    /// `⊗C(t)` for a total assignment `t`.
    pub fn value_of(&self, t: &Assignment) -> Result<Value> {
        let alg = self.alg();
        let mut acc = alg.identity();
        for c in &self.constraints {
            acc = alg.combine(&acc, &evaluate(self, c, t)?);
        }
        Ok(acc)
    }

    /// The same variables and algebra with a different constraint set.
    pub fn with_constraints(&self, constraints: Vec<Constraint>) -> Problem {
        Problem {
            constraints,
            ..self.clone()
        }
    }

    /// Resolves a name → value map into an assignment.
    pub fn assignment_from_names(&self, named: &BTreeMap<String, String>) -> Result<Assignment> {
        let mut t = self.empty_assignment();
        for (name, value) in named {
            let var = self
                .var_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name:?}")))?;
            let d = self.variables[var]
                .domain
                .iter()
                .position(|x| x == value)
                .ok_or_else(|| Error::Parse(format!("{value:?} is not in the domain of {name}")))?;
            t.set(var, d);
        }
        Ok(t)
    }

    /// The assigned variables of `t` by name.
    pub fn named(&self, t: &Assignment) -> BTreeMap<String, String> {
        self.variables
            .iter()
            .zip(t.slots())
            .filter_map(|(v, d)| d.map(|d| (v.name.clone(), v.domain[d].clone())))
            .collect()
    }

    /// A constraint in the problem-file table format.
    pub fn constraint_to_doc(&self, c: &Constraint) -> ConstraintDoc {
        let scope: Vec<String> = c.support().iter().map(|&v| self.variables[v].name.clone()).collect();
        let table = c
            .table
            .cells()
            .iter()
            .enumerate()
            .map(|(i, value)| RowDoc {
                assign: c
                    .table
                    .digits_of(i)
                    .iter()
                    .zip(c.support())
                    .map(|(&d, &v)| self.variables[v].domain[d].clone())
                    .collect(),
                value: self.algebra.value_to_json(value),
            })
            .collect();
        ConstraintDoc {
            id: c.id.clone(),
            scope,
            table,
            default: None,
        }
    }

    pub fn to_document(&self) -> ProblemDoc {
        ProblemDoc {
            algebra: serde_json::to_value(&self.spec).expect("specs serialize"),
            variables: self
                .variables
                .iter()
                .map(|v| VariableDoc {
                    name: v.name.clone(),
                    domain: v.domain.clone(),
                })
                .collect(),
            constraints: self.constraints.iter().map(|c| self.constraint_to_doc(c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::make_algebra;
    use serde_json::json;

    fn tropical_problem(doc: serde_json::Value) -> Problem {
        parse_problem(&doc.to_string()).unwrap()
    }

    fn unary(values: [u64; 2]) -> Problem {
        tropical_problem(json!({
            "algebra": {"kind": "tropical"},
            "variables": [{"name": "v", "domain": ["a", "b"]}],
            "constraints": [{"id": "c", "scope": ["v"], "table": [
                {"assign": ["a"], "value": values[0]},
                {"assign": ["b"], "value": values[1]}
            ]}]
        }))
    }

    #[test]
    fn evaluate_lookups() {
        let p = unary([3, 5]);
        let c = &p.constraints()[0];
        let t = p.empty_assignment().with(0, 0);
        assert_eq!(evaluate(&p, c, &t).unwrap(), Value::finite(3));
        assert_eq!(
            evaluate(&p, c, &p.empty_assignment()),
            Err(Error::MissingAssignment("v".into()))
        );
    }

    #[test]
    fn evaluate_binary_row_major() {
        let p = tropical_problem(json!({
            "algebra": {"kind": "tropical"},
            "variables": [{"name": "v1", "domain": ["p", "q"]}, {"name": "v2", "domain": ["p", "q"]},
                          {"name": "v3", "domain": ["p"]}],
            "constraints": [
                {"id": "c", "scope": ["v1", "v2"], "table": [
                    {"assign": ["p", "p"], "value": 1}, {"assign": ["p", "q"], "value": 2},
                    {"assign": ["q", "p"], "value": 3}, {"assign": ["q", "q"], "value": 4}]},
                {"id": "d", "scope": ["v3"], "default": 0}
            ]
        }));
        let c = &p.constraints()[0];
        let t = p.empty_assignment().with(0, 1).with(1, 0);
        assert_eq!(evaluate(&p, c, &t).unwrap(), Value::finite(3));
        // extra assigned variables are ignored
        assert_eq!(evaluate(&p, c, &t.with(2, 0)).unwrap(), Value::finite(3));
    }

    #[test]
    fn combine_examples() {
        let t = make_algebra(&InstanceSpec::Tropical).unwrap();
        let c = Constraint::new("c", Table::new(vec![0], vec![2], vec![Value::finite(3), Value::finite(5)]));
        let d = Constraint::new("d", Table::new(vec![0], vec![2], vec![Value::finite(2), Value::finite(0)]));
        let one = Constraint::constant("one", Value::finite(0));
        assert_eq!(combine_constraints(&*t, &c, &one).table, c.table);
        assert_eq!(combine_constraints(&*t, &c, &d).table.cells(), &[Value::finite(5), Value::finite(5)]);
        let e = Constraint::new("e", Table::new(vec![1], vec![2], vec![Value::finite(10), Value::finite(20)]));
        let ce = combine_constraints(&*t, &c, &e);
        assert_eq!(ce.support(), &[0, 1]);
        assert_eq!(
            ce.table.cells(),
            &[13, 23, 15, 25].map(Value::finite)
        );
        assert_eq!(combine_all(&*t, []).as_constant(), Some(&Value::finite(0)));
    }

    #[test]
    fn residuate_examples() {
        let t = make_algebra(&InstanceSpec::Tropical).unwrap();
        let c = Constraint::new("c", Table::new(vec![0], vec![2], vec![Value::finite(7), Value::finite(2)]));
        let d = Constraint::new("d", Table::new(vec![0], vec![2], vec![Value::finite(3), Value::finite(5)]));
        assert_eq!(residuate_constraints(&*t, &c, &d).unwrap().table.cells(), &[Value::finite(4), Value::finite(0)]);
        assert_eq!(residuate_constraints(&*t, &c, &c).unwrap().table.cells(), &[Value::finite(0), Value::finite(0)]);
        let bot = Constraint::constant("bot", Value::infinite());
        assert!(residuate_constraints(&*t, &c, &bot)
            .unwrap()
            .table
            .cells()
            .iter()
            .all(|v| *v == Value::finite(0)));
        let flat = make_algebra(&InstanceSpec::FlatCapped { n: 2 }).unwrap();
        let f = Constraint::constant("f", flat.identity());
        assert!(matches!(residuate_constraints(&*flat, &f, &f), Err(Error::Unsupported(_))));
    }

    #[test]
    fn projection_examples() {
        let t = make_algebra(&InstanceSpec::Tropical).unwrap();
        let c = Constraint::new("c", Table::new(vec![0], vec![2], vec![Value::finite(3), Value::finite(5)]));
        assert_eq!(project(&*t, &c, 0).unwrap().as_constant(), Some(&Value::finite(3)));
        assert!(matches!(project(&*t, &c, 1), Err(Error::NotInSupport { .. })));
        let b = Constraint::new("b", Table::new(vec![0, 1], vec![2, 2], [5, 0, 1, 2].map(Value::finite).to_vec()));
        let rows = project(&*t, &b, 1).unwrap();
        assert_eq!(rows.support(), &[0]);
        assert_eq!(rows.table.cells(), &[Value::finite(0), Value::finite(1)]);

        let p = make_algebra(&InstanceSpec::product(InstanceSpec::Tropical, InstanceSpec::Tropical)).unwrap();
        let pair = |x, y| Value::pair(Value::finite(x), Value::finite(y));
        let q = Constraint::new("q", Table::new(vec![0], vec![2], vec![pair(1, 2), pair(2, 1)]));
        let j = project(&*p, &q, 0).unwrap();
        assert_eq!(j.as_constant(), Some(&pair(1, 1)));
    }

    #[test]
    fn named_assignment_round_trip() {
        let p = unary([3, 5]);
        let named: BTreeMap<String, String> = [("v".to_string(), "b".to_string())].into();
        let t = p.assignment_from_names(&named).unwrap();
        assert_eq!(t.get(0), Some(1));
        assert_eq!(p.named(&t), named);
        assert!(p
            .assignment_from_names(&[("v".to_string(), "z".to_string())].into())
            .is_err());
    }

    #[test]
    fn document_round_trip() {
        let p = unary([3, 5]);
        let text = serde_json::to_string(&p.to_document()).unwrap();
        let q = parse_problem(&text).unwrap();
        assert_eq!(q.constraints(), p.constraints());
        assert_eq!(q.variables(), p.variables());
    }
}
