use rand::{Rng, RngCore};

use super::{expect_u64, InstanceSpec};
use crate::algebra::{OrderRelation, PreferenceAlgebra, Properties};
use crate::error::{Error, Result};
use crate::value::Value;

/// The finite chain `0..=n` with addition truncated at `n`, ordered like the
/// tropical costs: `⊤ = 1 = 0`, `⊥ = n`.
#[derive(Debug, Clone, Copy)]
pub struct Chain {
    n: u32,
}

impl Chain {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Construction("chain length must be positive".into()));
        }
        Ok(Chain { n })
    }

    fn level(&self, v: &Value) -> u32 {
        match v {
            Value::Level(x) if *x <= self.n => *x,
            other => panic!("chain({}) operation on foreign value {other:?}", self.n),
        }
    }
}

impl PreferenceAlgebra for Chain {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::Chain { n: self.n }
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Level(x) if *x <= self.n)
    }

    fn elements(&self) -> Option<Vec<Value>> {
        Some((0..=self.n).map(Value::Level).collect())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        Value::Level(rng.gen_range(0..=self.n))
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        OrderRelation::from_ordering(self.level(b).cmp(&self.level(a)))
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        Value::Level((self.level(a) + self.level(b)).min(self.n))
    }

    fn identity(&self) -> Value {
        Value::Level(0)
    }

    fn bottom(&self) -> Value {
        Value::Level(self.n)
    }

    fn top(&self) -> Option<Value> {
        Some(Value::Level(0))
    }

    fn join(&self, items: &[Value]) -> Value {
        Value::Level(items.iter().map(|v| self.level(v)).min().unwrap_or(self.n))
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        // least c with min(b + c, n) >= a
        Ok(Value::Level(self.level(a).saturating_sub(self.level(b))))
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        self.level(a) > 0
    }

    fn properties(&self) -> Properties {
        Properties {
            residuated: true,
            distributive: true,
            zero_bottom: true,
        }
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        let v = expect_u64(json, "a chain level")?;
        if v > self.n as u64 {
            return Err(Error::Parse(format!("chain level {v} exceeds {}", self.n)));
        }
        Ok(Value::Level(v as u32))
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        self.level(v).into()
    }
}
