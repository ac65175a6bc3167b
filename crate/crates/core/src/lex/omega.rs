//! Eventually-constant streams of `Lex_ω(A)`.
//!
//! A stream is a finite prefix followed by one repeated constant from
//! `{⊥, 1, ⊤}`. Beyond the longest prefix involved every operand is
//! constant, so all operations only inspect positions `0..=L` where `L` is
//! the longest prefix length.

use rand::{Rng, RngCore};

use super::{
    delta_index, first_difference, gamma_index, inductive_join, require_lex_base, validate_stream,
};
use crate::algebra::{Algebra, OrderRelation, PreferenceAlgebra, Properties, Structure};
use crate::error::{Error, Result};
use crate::instances::InstanceSpec;
use crate::value::Value;

/// The constant repeated after an [`OmegaTuple`]'s prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tail {
    Bot,
    One,
    Top,
}

impl Tail {
    pub fn as_str(self) -> &'static str {
        match self {
            Tail::Bot => "bot",
            Tail::One => "one",
            Tail::Top => "top",
        }
    }

    fn parse(s: &str) -> Option<Tail> {
        match s {
            "bot" => Some(Tail::Bot),
            "one" => Some(Tail::One),
            "top" => Some(Tail::Top),
            _ => None,
        }
    }
}

/// A canonical eventually-constant stream: the prefix never ends with the
/// tail constant, and the tail is the first of `ONE, BOT, TOP` denoting its
/// constant value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OmegaTuple {
    prefix: Vec<Value>,
    tail: Tail,
}

impl OmegaTuple {
    pub fn prefix(&self) -> &[Value] {
        &self.prefix
    }

    pub fn tail(&self) -> Tail {
        self.tail
    }

    /// The component at 0-based position `i`.
    pub fn at(&self, base: &dyn PreferenceAlgebra, i: usize) -> Value {
        match self.prefix.get(i) {
            Some(v) => v.clone(),
            None => tail_value(base, self.tail),
        }
    }

    /// The first `k` components.
    pub fn truncate(&self, base: &dyn PreferenceAlgebra, k: usize) -> Vec<Value> {
        (0..k).map(|i| self.at(base, i)).collect()
    }
}

fn tail_value(base: &dyn PreferenceAlgebra, tail: Tail) -> Value {
    match tail {
        Tail::Bot => base.bottom(),
        Tail::One => base.identity(),
        Tail::Top => base.top().expect("TOP tails are only built over bases with a top"),
    }
}

/// The tail constant denoting `v`, if any.
fn tail_of(base: &dyn PreferenceAlgebra, v: &Value) -> Option<Tail> {
    if *v == base.identity() {
        Some(Tail::One)
    } else if *v == base.bottom() {
        Some(Tail::Bot)
    } else if base.top().as_ref() == Some(v) && !base.is_collapsing(v) {
        Some(Tail::Top)
    } else {
        None
    }
}

/// Validates and canonicalizes a stream.
///
/// A `TOP` tail needs a cancellative `⊤`. Such a `⊤` always equals `1`
/// (`⊤ ⊗ ⊤ = ⊤ = ⊤ ⊗ 1`), so the canonical form rewrites it to `ONE`.
pub fn omega_make(base: &dyn PreferenceAlgebra, prefix: Vec<Value>, tail: Tail) -> Result<OmegaTuple> {
    if tail == Tail::Top {
        match base.top() {
            Some(top) if !base.is_collapsing(&top) => {}
            _ => {
                return Err(Error::InvalidLexTuple {
                    index: prefix.len(),
                    reason: format!("a TOP tail needs a cancellative top in {}", base.name()),
                })
            }
        }
    }
    let value = tail_value(base, tail);
    validate_stream(base, &prefix, Some(&value))?;
    let tail = tail_of(base, &value).unwrap_or(tail);
    let mut prefix = prefix;
    while prefix.last() == Some(&value) {
        prefix.pop();
    }
    Ok(OmegaTuple { prefix, tail })
}

/// Builds the canonical stream `prefix · v^ω` for a value `v` that must be
/// one of the tail constants.
fn from_constant(base: &dyn PreferenceAlgebra, prefix: Vec<Value>, v: &Value) -> Result<OmegaTuple> {
    let tail = tail_of(base, v).ok_or_else(|| {
        Error::Unsupported(format!(
            "the constant stream {v}^ω is outside the representable fragment of {}",
            base.name()
        ))
    })?;
    omega_make(base, prefix, tail)
}

fn horizon(a: &OmegaTuple, b: &OmegaTuple) -> usize {
    a.prefix.len().max(b.prefix.len())
}

pub fn omega_compare(base: &dyn PreferenceAlgebra, a: &OmegaTuple, b: &OmegaTuple) -> OrderRelation {
    let l = horizon(a, b);
    let xs = a.truncate(base, l + 1);
    let ys = b.truncate(base, l + 1);
    first_difference(base, xs.iter().zip(&ys))
}

pub fn omega_combine(base: &dyn PreferenceAlgebra, a: &OmegaTuple, b: &OmegaTuple) -> Result<OmegaTuple> {
    let l = horizon(a, b);
    let mut items: Vec<Value> = (0..=l).map(|i| base.combine(&a.at(base, i), &b.at(base, i))).collect();
    let tail = items.pop().expect("at least one position");
    from_constant(base, items, &tail)
}

/// Least upper bound of finitely many streams.
///
/// The inductive join is computed over positions `0..=L+1`. From `L + 1` on
/// the matching set no longer changes, so position `L + 1` repeats forever.
pub fn omega_join(base: &dyn PreferenceAlgebra, items: &[OmegaTuple]) -> Result<OmegaTuple> {
    let l = items.iter().map(|t| t.prefix.len()).max().unwrap_or(0);
    let rows: Vec<Vec<Value>> = items.iter().map(|t| t.truncate(base, l + 2)).collect();
    let refs: Vec<&[Value]> = rows.iter().map(Vec::as_slice).collect();
    let mut joined = inductive_join(base, &refs, l + 2);
    let tail = joined.pop().expect("at least two positions");
    from_constant(base, joined, &tail)
}

fn residuals(base: &dyn PreferenceAlgebra, a: &OmegaTuple, b: &OmegaTuple) -> Result<(Vec<Value>, Vec<Value>, Vec<Value>)> {
    let l = horizon(a, b);
    let xs = a.truncate(base, l + 1);
    let ys = b.truncate(base, l + 1);
    let rs = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| base.residual(x, y))
        .collect::<Result<Vec<_>>>()?;
    Ok((rs, xs, ys))
}

/// `γ(a, b)` as a 1-based index, `None` standing for `∞`.
pub fn omega_gamma(base: &dyn PreferenceAlgebra, a: &OmegaTuple, b: &OmegaTuple) -> Result<Option<usize>> {
    let (rs, _, _) = residuals(base, a, b)?;
    Ok(gamma_index(base, &rs).map(|i| i + 1))
}

/// `δ(a, b)` as a 1-based index, `None` standing for `∞`.
pub fn omega_delta(base: &dyn PreferenceAlgebra, a: &OmegaTuple, b: &OmegaTuple) -> Result<Option<usize>> {
    let (rs, xs, ys) = residuals(base, a, b)?;
    Ok(delta_index(base, &rs, &xs, &ys).map(|i| i + 1))
}

/// `⋁Lex_ω(A)`: `⊤^ω` when `⊤` is cancellative, `⊤⊥^ω` otherwise.
pub fn omega_top(base: &dyn PreferenceAlgebra) -> Result<OmegaTuple> {
    let top = base
        .top()
        .ok_or_else(|| Error::Unsupported(format!("{} has no top element", base.name())))?;
    if base.is_collapsing(&top) {
        omega_make(base, vec![top], Tail::Bot)
    } else {
        omega_make(base, Vec::new(), Tail::Top)
    }
}

/// The residual `a ⊖_ω b`, by the same three cases as the finite residual
/// with `∞` in place of `k + 1`.
///
/// Fails when both indices are infinite and the residual of the tails is
/// not one of the tail constants.
pub fn omega_residual(base: &dyn PreferenceAlgebra, a: &OmegaTuple, b: &OmegaTuple) -> Result<OmegaTuple> {
    let (mut rs, xs, ys) = residuals(base, a, b)?;
    let g = gamma_index(base, &rs);
    let d = delta_index(base, &rs, &xs, &ys);
    match (g, d) {
        (None, None) => {
            let tail = rs.pop().expect("at least one position");
            from_constant(base, rs, &tail)
        }
        (Some(g), d) if d.is_none_or(|d| g <= d) => {
            rs.truncate(g + 1);
            omega_make(base, rs, Tail::Bot)
        }
        (_, Some(d)) => {
            rs.truncate(d + 1);
            let top = omega_top(base)?;
            rs.extend(top.prefix);
            omega_make(base, rs, top.tail)
        }
        (Some(_), None) => unreachable!("covered by the γ ≤ δ arm"),
    }
}

/// Every canonical stream whose prefix has at most `max_prefix` components.
pub fn enumerate_fragment(base: &dyn PreferenceAlgebra, max_prefix: usize) -> Result<Vec<OmegaTuple>> {
    let elements = base
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} has an infinite carrier", base.name())))?;
    let mut out = Vec::new();
    let mut prefixes: Vec<Vec<Value>> = vec![Vec::new()];
    for len in 0..=max_prefix {
        for p in &prefixes {
            for tail in [Tail::Bot, Tail::One, Tail::Top] {
                if let Ok(t) = omega_make(base, p.clone(), tail) {
                    // only keep streams whose canonical prefix is exactly p
                    if t.prefix.len() == len && !out.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        prefixes = prefixes
            .iter()
            .flat_map(|p| {
                elements.iter().map(move |e| {
                    let mut q = p.clone();
                    q.push(e.clone());
                    q
                })
            })
            .collect();
    }
    Ok(out)
}

/// The eventually-constant fragment of `Lex_ω(A)` as a [`PreferenceAlgebra`].
#[derive(Debug, Clone)]
pub struct OmegaAlgebra {
    base: Algebra,
}

impl OmegaAlgebra {
    /// Requires a residuated base whose bottom annihilates.
    pub fn new(base: Algebra) -> Result<Self> {
        require_lex_base(&*base)?;
        Ok(OmegaAlgebra { base })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    fn tuple<'v>(&self, v: &'v Value) -> &'v OmegaTuple {
        v.as_omega()
            .unwrap_or_else(|| panic!("omega operation on foreign value {v:?}"))
    }

    fn cancellative_sample(&self, rng: &mut dyn RngCore) -> Value {
        for _ in 0..16 {
            let v = self.base.sample(rng);
            if !self.base.is_collapsing(&v) {
                return v;
            }
        }
        self.base.identity()
    }
}

impl PreferenceAlgebra for OmegaAlgebra {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::lex_omega(self.base.spec())
    }

    fn contains(&self, v: &Value) -> bool {
        v.as_omega().is_some_and(|t| {
            omega_make(&*self.base, t.prefix.clone(), t.tail).as_ref() == Ok(t)
        })
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        let len = rng.gen_range(0..4);
        let mut prefix: Vec<Value> = (0..len).map(|_| self.cancellative_sample(rng)).collect();
        let tail = if rng.gen_bool(0.5) {
            Tail::One
        } else {
            if len > 0 && rng.gen_bool(0.5) {
                prefix[len - 1] = self.base.sample(rng);
            }
            Tail::Bot
        };
        Value::Omega(omega_make(&*self.base, prefix, tail).expect("sampled streams are valid"))
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        omega_compare(&*self.base, self.tuple(a), self.tuple(b))
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        Value::Omega(
            omega_combine(&*self.base, self.tuple(a), self.tuple(b))
                .expect("the tail table is closed under combine"),
        )
    }

    fn identity(&self) -> Value {
        Value::Omega(OmegaTuple {
            prefix: Vec::new(),
            tail: Tail::One,
        })
    }

    fn bottom(&self) -> Value {
        Value::Omega(
            omega_make(&*self.base, Vec::new(), Tail::Bot).expect("⊥^ω is always a member"),
        )
    }

    fn top(&self) -> Option<Value> {
        omega_top(&*self.base).ok().map(Value::Omega)
    }

    fn join(&self, items: &[Value]) -> Value {
        let tuples: Vec<OmegaTuple> = items.iter().map(|v| self.tuple(v).clone()).collect();
        Value::Omega(
            omega_join(&*self.base, &tuples).expect("joins of tail constants are tail constants"),
        )
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        omega_residual(&*self.base, self.tuple(a), self.tuple(b)).map(Value::Omega)
    }

    fn is_collapsing(&self, a: &Value) -> bool {
        let t = self.tuple(a);
        t.prefix.iter().any(|c| self.base.is_collapsing(c))
            || self.base.is_collapsing(&tail_value(&*self.base, t.tail))
    }

    fn properties(&self) -> Properties {
        Properties {
            residuated: true,
            distributive: self.base.properties().distributive,
            zero_bottom: true,
        }
    }

    fn structure(&self) -> Structure<'_> {
        Structure::Omega { base: &self.base }
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        let bad = || Error::Parse(format!("omega value must be {{\"prefix\": [...], \"tail\": \"bot\"|\"one\"|\"top\"}}: {json}"));
        let obj = json.as_object().ok_or_else(bad)?;
        let prefix = obj
            .get("prefix")
            .and_then(|p| p.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|c| self.base.parse_value(c))
            .collect::<Result<Vec<_>>>()?;
        let tail = obj
            .get("tail")
            .and_then(|t| t.as_str())
            .and_then(Tail::parse)
            .ok_or_else(bad)?;
        omega_make(&*self.base, prefix, tail).map(Value::Omega)
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        let t = self.tuple(v);
        serde_json::json!({
            "prefix": t.prefix.iter().map(|c| self.base.value_to_json(c)).collect::<Vec<_>>(),
            "tail": t.tail.as_str(),
        })
    }
}
