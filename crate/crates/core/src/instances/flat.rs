use rand::{Rng, RngCore};

use super::InstanceSpec;
use crate::algebra::{OrderRelation, PreferenceAlgebra, Properties};
use crate::error::{Error, Result};
use crate::value::{Flat, Value};

/// `[0..n] ∪ {⊥, ⊤}` with the flat order and addition capped at `n`.
///
/// Not distributive and not residuated: it only exists to separate `C(A)`
/// from `C'(A)`.
#[derive(Debug, Clone, Copy)]
pub struct FlatCapped {
    n: u32,
}

impl FlatCapped {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Construction("flat-capped bound must be positive".into()));
        }
        Ok(FlatCapped { n })
    }

    fn flat(&self, v: &Value) -> Flat {
        match v {
            Value::Flat(f) if self.contains(v) => *f,
            other => panic!("flat-capped operation on foreign value {other:?}"),
        }
    }
}

impl PreferenceAlgebra for FlatCapped {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::FlatCapped { n: self.n }
    }

    fn contains(&self, v: &Value) -> bool {
        match v {
            Value::Flat(Flat::Num(x)) => *x <= self.n,
            Value::Flat(_) => true,
            _ => false,
        }
    }

    fn elements(&self) -> Option<Vec<Value>> {
        let mut all = vec![Value::Flat(Flat::Bot)];
        all.extend((0..=self.n).map(|x| Value::Flat(Flat::Num(x))));
        all.push(Value::Flat(Flat::Top));
        Some(all)
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        Value::Flat(match rng.gen_range(0..=self.n + 2) {
            0 => Flat::Bot,
            1 => Flat::Top,
            k => Flat::Num(k - 2),
        })
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        match (self.flat(a), self.flat(b)) {
            (x, y) if x == y => OrderRelation::Equal,
            (Flat::Bot, _) | (_, Flat::Top) => OrderRelation::Less,
            (_, Flat::Bot) | (Flat::Top, _) => OrderRelation::Greater,
            _ => OrderRelation::Incomparable,
        }
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        Value::Flat(match (self.flat(a), self.flat(b)) {
            (Flat::Bot, _) | (_, Flat::Bot) => Flat::Bot,
            (Flat::Top, _) | (_, Flat::Top) => Flat::Top,
            (Flat::Num(x), Flat::Num(y)) => Flat::Num((x + y).min(self.n)),
        })
    }

    fn identity(&self) -> Value {
        Value::Flat(Flat::Num(0))
    }

    fn bottom(&self) -> Value {
        Value::Flat(Flat::Bot)
    }

    fn top(&self) -> Option<Value> {
        Some(Value::Flat(Flat::Top))
    }

    fn join(&self, items: &[Value]) -> Value {
        let mut acc = Flat::Bot;
        for v in items {
            acc = match (acc, self.flat(v)) {
                (x, Flat::Bot) => x,
                (Flat::Bot, y) => y,
                (x, y) if x == y => x,
                _ => Flat::Top,
            };
        }
        Value::Flat(acc)
    }

    fn residual(&self, _a: &Value, _b: &Value) -> Result<Value> {
        Err(Error::Unsupported(format!(
            "flat-capped({}) is not residuated",
            self.n
        )))
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        self.flat(a) != Flat::Num(0)
    }

    fn is_weakly_collapsing(&self, a: &Value) -> Result<bool> {
        Ok(matches!(self.flat(a), Flat::Bot | Flat::Top))
    }

    fn properties(&self) -> Properties {
        Properties {
            residuated: false,
            distributive: false,
            zero_bottom: true,
        }
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        let v = match json {
            serde_json::Value::String(s) if s == "bot" => Value::Flat(Flat::Bot),
            serde_json::Value::String(s) if s == "top" => Value::Flat(Flat::Top),
            _ => Value::Flat(Flat::Num(
                json.as_u64()
                    .and_then(|x| u32::try_from(x).ok())
                    .ok_or_else(|| Error::Parse(format!("flat-capped value: {json}")))?,
            )),
        };
        if !self.contains(&v) {
            return Err(Error::Parse(format!("flat-capped value out of range: {json}")));
        }
        Ok(v)
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        match self.flat(v) {
            Flat::Bot => "bot".into(),
            Flat::Top => "top".into(),
            Flat::Num(x) => x.into(),
        }
    }
}
