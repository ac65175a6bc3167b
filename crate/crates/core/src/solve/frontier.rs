//! Undominated sets under a partial order.

use crate::algebra::{OrderRelation, PreferenceAlgebra};
use crate::csp::Assignment;
use crate::value::Value;

/// A full assignment with its combined preference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub assignment: Assignment,
    pub value: Value,
}

/// Mutually undominated solutions, sorted by assignment.
pub type Frontier = Vec<Solution>;

/// Drops every solution whose value is strictly below another's. Ties survive.
pub fn undominated(alg: &dyn PreferenceAlgebra, solutions: Vec<Solution>) -> Frontier {
    let keep: Vec<bool> = solutions
        .iter()
        .map(|s| !solutions.iter().any(|o| alg.compare(&s.value, &o.value).is_lt()))
        .collect();
    let mut out: Frontier = solutions
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect();
    out.sort_by(|a, b| a.assignment.cmp(&b.assignment));
    out
}

/// The maximal values of `values`, one representative per equivalence class.
pub(crate) fn maximal(alg: &dyn PreferenceAlgebra, values: Vec<Value>) -> Vec<Value> {
    let mut out: Vec<Value> = Vec::with_capacity(values.len());
    'next: for v in values {
        let mut i = 0;
        while i < out.len() {
            match alg.compare(&v, &out[i]) {
                OrderRelation::Less | OrderRelation::Equal => continue 'next,
                OrderRelation::Greater => {
                    out.swap_remove(i);
                }
                OrderRelation::Incomparable => i += 1,
            }
        }
        out.push(v);
    }
    out
}

/// `max{a ⊗ b | a ∈ xs, b ∈ ys}`.
pub(crate) fn set_combine(alg: &dyn PreferenceAlgebra, xs: &[Value], ys: &[Value]) -> Vec<Value> {
    maximal(
        alg,
        xs.iter()
            .flat_map(|x| ys.iter().map(move |y| alg.combine(x, y)))
            .collect(),
    )
}

/// True when `v` is strictly below some member of `others`.
pub(crate) fn strictly_dominated(alg: &dyn PreferenceAlgebra, v: &Value, others: &[Value]) -> bool {
    others.iter().any(|o| alg.compare(v, o).is_lt())
}
