use rand::RngCore;

use super::InstanceSpec;
use crate::algebra::{Algebra, OrderRelation, PreferenceAlgebra, Properties, Structure};
use crate::error::{Error, Result};
use crate::value::Value;

/// Cartesian product with every operation defined componentwise.
#[derive(Debug, Clone)]
pub struct Product {
    left: Algebra,
    right: Algebra,
}

impl Product {
    pub fn new(left: Algebra, right: Algebra) -> Self {
        Product { left, right }
    }

    fn split<'v>(&self, v: &'v Value) -> (&'v Value, &'v Value) {
        v.as_pair()
            .unwrap_or_else(|| panic!("product operation on foreign value {v:?}"))
    }

    fn unzip(&self, items: &[Value]) -> (Vec<Value>, Vec<Value>) {
        items
            .iter()
            .map(|v| {
                let (l, r) = self.split(v);
                (l.clone(), r.clone())
            })
            .unzip()
    }
}

impl PreferenceAlgebra for Product {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::product(self.left.spec(), self.right.spec())
    }

    fn contains(&self, v: &Value) -> bool {
        v.as_pair()
            .is_some_and(|(l, r)| self.left.contains(l) && self.right.contains(r))
    }

    fn elements(&self) -> Option<Vec<Value>> {
        let left = self.left.elements()?;
        let right = self.right.elements()?;
        Some(
            left.iter()
                .flat_map(|l| right.iter().map(move |r| Value::pair(l.clone(), r.clone())))
                .collect(),
        )
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        let l = self.left.sample(rng);
        Value::pair(l, self.right.sample(rng))
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        let first = self.left.compare(a1, b1);
        let second = self.right.compare(a2, b2);
        OrderRelation::from_le(
            first.is_le() && second.is_le(),
            first.reverse().is_le() && second.reverse().is_le(),
        )
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        Value::pair(self.left.combine(a1, b1), self.right.combine(a2, b2))
    }

    fn identity(&self) -> Value {
        Value::pair(self.left.identity(), self.right.identity())
    }

    fn bottom(&self) -> Value {
        Value::pair(self.left.bottom(), self.right.bottom())
    }

    fn top(&self) -> Option<Value> {
        Some(Value::pair(self.left.top()?, self.right.top()?))
    }

    fn join(&self, items: &[Value]) -> Value {
        let (ls, rs) = self.unzip(items);
        Value::pair(self.left.join(&ls), self.right.join(&rs))
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        let (a1, a2) = self.split(a);
        let (b1, b2) = self.split(b);
        Ok(Value::pair(
            self.left.residual(a1, b1)?,
            self.right.residual(a2, b2)?,
        ))
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        let (l, r) = self.split(a);
        self.left.is_collapsing(l) || self.right.is_collapsing(r)
    }

    fn properties(&self) -> Properties {
        let (l, r) = (self.left.properties(), self.right.properties());
        Properties {
            residuated: l.residuated && r.residuated,
            distributive: l.distributive && r.distributive,
            zero_bottom: l.zero_bottom && r.zero_bottom,
        }
    }

    fn structure(&self) -> Structure<'_> {
        Structure::Product(&self.left, &self.right)
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        match json.as_array().map(Vec::as_slice) {
            Some([l, r]) => Ok(Value::pair(
                self.left.parse_value(l)?,
                self.right.parse_value(r)?,
            )),
            _ => Err(Error::Parse(format!(
                "product value must be a two-element array: {json}"
            ))),
        }
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        let (l, r) = self.split(v);
        serde_json::Value::Array(vec![self.left.value_to_json(l), self.right.value_to_json(r)])
    }
}
