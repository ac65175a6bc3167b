use rand::{Rng, RngCore};

use super::InstanceSpec;
use crate::algebra::{OrderRelation, PreferenceAlgebra, Properties};
use crate::error::{Error, Result};
use crate::value::{ExtInt, Value};

/// The extended integers under the natural order and addition, with
/// `+∞ + (−∞) = −∞`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ExtendedInt;

fn int(v: &Value) -> ExtInt {
    match v {
        Value::Int(x) => *x,
        other => panic!("extended-int operation on foreign value {other:?}"),
    }
}

impl PreferenceAlgebra for ExtendedInt {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::ExtendedInt
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Int(_))
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        match rng.gen_range(0..10) {
            0 => Value::Int(ExtInt::NegInf),
            1 => Value::Int(ExtInt::PosInf),
            _ => Value::int(rng.gen_range(-10..=10)),
        }
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        OrderRelation::from_ordering(int(a).cmp(&int(b)))
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        Value::Int(match (int(a), int(b)) {
            (ExtInt::NegInf, _) | (_, ExtInt::NegInf) => ExtInt::NegInf,
            (ExtInt::PosInf, _) | (_, ExtInt::PosInf) => ExtInt::PosInf,
            (ExtInt::Finite(x), ExtInt::Finite(y)) => {
                ExtInt::Finite(x.checked_add(y).expect("extended-int overflow"))
            }
        })
    }

    fn identity(&self) -> Value {
        Value::int(0)
    }

    fn bottom(&self) -> Value {
        Value::Int(ExtInt::NegInf)
    }

    fn top(&self) -> Option<Value> {
        Some(Value::Int(ExtInt::PosInf))
    }

    fn join(&self, items: &[Value]) -> Value {
        Value::Int(items.iter().map(int).max().unwrap_or(ExtInt::NegInf))
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(Value::Int(match (int(a), int(b)) {
            (_, ExtInt::NegInf) | (ExtInt::PosInf, _) => ExtInt::PosInf,
            (_, ExtInt::PosInf) | (ExtInt::NegInf, _) => ExtInt::NegInf,
            (ExtInt::Finite(x), ExtInt::Finite(y)) => {
                ExtInt::Finite(x.checked_sub(y).expect("extended-int overflow"))
            }
        }))
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        !matches!(int(a), ExtInt::Finite(_))
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
            serde_json::Value::String(s) if s == "inf" => Ok(Value::Int(ExtInt::PosInf)),
            serde_json::Value::String(s) if s == "-inf" => Ok(Value::Int(ExtInt::NegInf)),
            _ => json
                .as_i64()
                .map(Value::int)
                .ok_or_else(|| Error::Parse(format!("extended-int value: {json}"))),
        }
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        match int(v) {
            ExtInt::Finite(n) => n.into(),
            ExtInt::PosInf => "inf".into(),
            ExtInt::NegInf => "-inf".into(),
        }
    }
}
