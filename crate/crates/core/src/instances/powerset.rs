use rand::{Rng, RngCore};

use super::InstanceSpec;
use crate::algebra::{OrderRelation, PreferenceAlgebra, Properties};
use crate::error::{Error, Result};
use crate::value::Value;

/// Subsets of a finite universe combined by union and ordered by reverse
/// inclusion: `⊤ = 1 = ∅`, `⊥` is the whole universe, joins intersect and
/// `a ⊖ b = a ∖ b`.
#[derive(Debug, Clone)]
pub struct PowerSet {
    universe: Vec<String>,
    full: u64,
}

/// Largest universe whose carrier is still enumerated.
const ENUMERABLE_NAMES: usize = 16;

impl PowerSet {
    pub fn new(universe: Vec<String>) -> Result<Self> {
        if universe.len() > 64 {
            return Err(Error::Construction("power-set universe exceeds 64 names".into()));
        }
        for (i, name) in universe.iter().enumerate() {
            if universe[..i].contains(name) {
                return Err(Error::Construction(format!("duplicate universe name {name:?}")));
            }
        }
        let full = if universe.len() == 64 {
            u64::MAX
        } else {
            (1u64 << universe.len()) - 1
        };
        Ok(PowerSet { universe, full })
    }

    fn mask(&self, v: &Value) -> u64 {
        match v {
            Value::Set(m) if m & !self.full == 0 => *m,
            other => panic!("power-set operation on foreign value {other:?}"),
        }
    }
}

impl PreferenceAlgebra for PowerSet {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::PowerSet {
            universe: self.universe.clone(),
        }
    }

    fn contains(&self, v: &Value) -> bool {
        matches!(v, Value::Set(m) if m & !self.full == 0)
    }

    fn elements(&self) -> Option<Vec<Value>> {
        (self.universe.len() <= ENUMERABLE_NAMES).then(|| (0..=self.full).map(Value::Set).collect())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        Value::Set(rng.gen::<u64>() & self.full)
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        let (a, b) = (self.mask(a), self.mask(b));
        // a ≤ b iff a ⊇ b
        OrderRelation::from_le(a & b == b, a & b == a)
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        Value::Set(self.mask(a) | self.mask(b))
    }

    fn identity(&self) -> Value {
        Value::Set(0)
    }

    fn bottom(&self) -> Value {
        Value::Set(self.full)
    }

    fn top(&self) -> Option<Value> {
        Some(Value::Set(0))
    }

    fn join(&self, items: &[Value]) -> Value {
        Value::Set(items.iter().fold(self.full, |acc, v| acc & self.mask(v)))
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        Ok(Value::Set(self.mask(a) & !self.mask(b)))
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        self.mask(a) != 0
    }

    fn properties(&self) -> Properties {
        Properties {
            residuated: true,
            distributive: true,
            zero_bottom: true,
        }
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        let names = json
            .as_array()
            .ok_or_else(|| Error::Parse(format!("power-set value must be an array: {json}")))?;
        let mut mask = 0u64;
        for name in names {
            let idx = name
                .as_str()
                .and_then(|s| self.universe.iter().position(|u| u == s))
                .ok_or_else(|| Error::Parse(format!("unknown universe member {name}")))?;
            mask |= 1 << idx;
        }
        Ok(Value::Set(mask))
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        let mask = self.mask(v);
        self.universe
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, name)| serde_json::Value::from(name.as_str()))
            .collect()
    }
}
