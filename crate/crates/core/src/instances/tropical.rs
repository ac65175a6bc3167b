use rand::{Rng, RngCore};

use super::{expect_u64, InstanceSpec};
use crate::algebra::{OrderRelation, PreferenceAlgebra, Properties};
use crate::error::{Error, Result};
use crate::value::{Cost, Value};

/// `⟨N ∪ {∞}, ≥, +, 0⟩`. Higher in the order means a smaller cost, so
/// `⊥ = ∞`, `⊤ = 1 = 0` and joins are numeric minima.
#[derive(Debug, Clone, Copy, Default)]
pub struct Tropical;

fn cost(v: &Value) -> Cost {
    match v {
        Value::Tropical(c) => *c,
        other => panic!("tropical operation on foreign value {other:?}"),
    }
}

impl PreferenceAlgebra for Tropical {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::Tropical
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Tropical(_))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        if rng.gen_ratio(1, 7) {
            Value::infinite()
        } else {
            Value::finite(rng.gen_range(0..10))
        }
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        OrderRelation::from_ordering(cost(b).cmp(&cost(a)))
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        match (cost(a), cost(b)) {
            (Cost::Finite(x), Cost::Finite(y)) => {
                Value::finite(x.checked_add(y).expect("tropical cost overflow"))
            }
            _ => Value::infinite(),
        }
    }

    fn identity(&self) -> Value {
        Value::finite(0)
    }

    fn bottom(&self) -> Value {
        Value::infinite()
    }

    fn top(&self) -> Option<Value> {
        Some(Value::finite(0))
    }

    fn join(&self, items: &[Value]) -> Value {
        items
            .iter()
            .map(cost)
            .min()
            .map(Value::Tropical)
            .unwrap_or_else(Value::infinite)
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(match (cost(a), cost(b)) {
            (_, Cost::Infinite) => Value::finite(0),
            (Cost::Infinite, Cost::Finite(_)) => Value::infinite(),
            (Cost::Finite(x), Cost::Finite(y)) => Value::finite(x.saturating_sub(y)),
        })
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        cost(a) == Cost::Infinite
    }

    fn properties(&self) -> Properties {
        Properties {
            residuated: true,
            distributive: true,
            zero_bottom: true,
        }
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        match json {
            serde_json::Value::String(s) if s == "inf" => Ok(Value::infinite()),
            _ => expect_u64(json, "a non-negative integer or \"inf\"")
                .map(Value::finite)
                .map_err(|_| Error::Parse(format!("tropical value: {json}"))),
        }
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        match cost(v) {
            Cost::Finite(n) => n.into(),
            Cost::Infinite => "inf".into(),
        }
    }
}
