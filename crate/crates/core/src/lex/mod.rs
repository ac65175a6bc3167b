//! Lexicographic products `Lex_k(A)` and the eventually-constant fragment of
//! `Lex_ω(A)`.
//!
//! A tuple is only a member of `Lex_k(A)` when every component after the
//! first collapsing one is `⊥`; [`lex_make`] enforces this. The residual
//! picks one of three shapes according to the indices [`gamma`] and [`delta`].

mod omega;

use rand::RngCore;

use crate::algebra::{Algebra, OrderRelation, PreferenceAlgebra, Properties, Structure};
use crate::error::{Error, Result};
use crate::instances::InstanceSpec;
use crate::value::Value;

pub use omega::{
    enumerate_fragment, omega_combine, omega_compare, omega_delta, omega_gamma, omega_join,
    omega_make, omega_residual, omega_top, OmegaAlgebra, OmegaTuple, Tail,
};

/// A validated element of `Lex_k(A)`; `k` is the number of components.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LexTuple {
    components: Vec<Value>,
}

impl LexTuple {
    pub fn components(&self) -> &[Value] {
        &self.components
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn into_components(self) -> Vec<Value> {
        self.components
    }
}

/// Checks that `components` has the shape `I(A)^i · A · {⊥}^{k−i−1}`.
pub fn lex_make(base: &dyn PreferenceAlgebra, components: Vec<Value>) -> Result<LexTuple> {
    if components.is_empty() {
        return Err(Error::InvalidLexTuple {
            index: 0,
            reason: "a lex tuple needs at least one component".into(),
        });
    }
    validate_stream(base, &components, None)?;
    Ok(LexTuple { components })
}

/// Shared membership check for finite tuples and omega prefixes. `tail` is
/// the constant repeated after `items`, if any.
pub(crate) fn validate_stream(
    base: &dyn PreferenceAlgebra,
    items: &[Value],
    tail: Option<&Value>,
) -> Result<()> {
    for (index, v) in items.iter().chain(tail).enumerate() {
        if !base.contains(v) {
            return Err(Error::InvalidLexTuple {
                index,
                reason: format!("{v} is not in the carrier of {}", base.name()),
            });
        }
    }
    let all: Vec<&Value> = items.iter().chain(tail).collect();
    if let Some(first) = all.iter().position(|v| base.is_collapsing(v)) {
        let bot = base.bottom();
        if let Some(offset) = all[first + 1..].iter().position(|v| **v != bot) {
            return Err(Error::InvalidLexTuple {
                index: first + 1 + offset,
                reason: format!(
                    "component {} is collapsing, so every later component must be ⊥ = {bot}",
                    all[first]
                ),
            });
        }
    }
    Ok(())
}

fn same_arity(a: &LexTuple, b: &LexTuple) -> Result<()> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        });
    }
    Ok(())
}

/// First-difference comparison. Incomparable first differences make the
/// tuples incomparable.
pub fn lex_compare(base: &dyn PreferenceAlgebra, a: &LexTuple, b: &LexTuple) -> Result<OrderRelation> {
    same_arity(a, b)?;
    Ok(first_difference(base, a.components.iter().zip(&b.components)))
}

pub(crate) fn first_difference<'v>(
    base: &dyn PreferenceAlgebra,
    pairs: impl IntoIterator<Item = (&'v Value, &'v Value)>,
) -> OrderRelation {
    pairs
        .into_iter()
        .find(|(x, y)| x != y)
        .map(|(x, y)| base.compare(x, y))
        .unwrap_or(OrderRelation::Equal)
}

pub fn lex_combine(base: &dyn PreferenceAlgebra, a: &LexTuple, b: &LexTuple) -> Result<LexTuple> {
    same_arity(a, b)?;
    Ok(LexTuple {
        components: a
            .components
            .iter()
            .zip(&b.components)
            .map(|(x, y)| base.combine(x, y))
            .collect(),
    })
}

/// Least upper bound of `items`, all of arity `k`.
///
/// The head is the join of the heads; each later component joins the
/// continuations of the tuples that agree with the prefix built so far, or is
/// `⊥` once no tuple does.
pub fn lex_join(base: &dyn PreferenceAlgebra, k: usize, items: &[LexTuple]) -> Result<LexTuple> {
    if let Some(bad) = items.iter().find(|t| t.arity() != k) {
        return Err(Error::ArityMismatch {
            left: k,
            right: bad.arity(),
        });
    }
    let rows: Vec<&[Value]> = items.iter().map(|t| t.components()).collect();
    Ok(LexTuple {
        components: inductive_join(base, &rows, k),
    })
}

/// The inductive join over the first `len` positions of `rows`.
pub(crate) fn inductive_join(base: &dyn PreferenceAlgebra, rows: &[&[Value]], len: usize) -> Vec<Value> {
    let mut matching: Vec<&[Value]> = rows.to_vec();
    let mut out = Vec::with_capacity(len);
    for i in 0..len {
        let column: Vec<Value> = matching.iter().map(|r| r[i].clone()).collect();
        let j = base.join(&column);
        matching.retain(|r| r[i] == j);
        out.push(j);
    }
    out
}

/// Pointwise residuals `a_i ⊖ b_i`.
fn pointwise_residuals(base: &dyn PreferenceAlgebra, a: &[Value], b: &[Value]) -> Result<Vec<Value>> {
    a.iter().zip(b).map(|(x, y)| base.residual(x, y)).collect()
}

/// 0-based position of the first collapsing residual.
pub(crate) fn gamma_index(base: &dyn PreferenceAlgebra, residuals: &[Value]) -> Option<usize> {
    residuals.iter().position(|r| base.is_collapsing(r))
}

/// 0-based position of the first strict loss `(a_i ⊖ b_i) ⊗ b_i < a_i`.
pub(crate) fn delta_index(
    base: &dyn PreferenceAlgebra,
    residuals: &[Value],
    a: &[Value],
    b: &[Value],
) -> Option<usize> {
    (0..residuals.len()).find(|&i| base.compare(&base.combine(&residuals[i], &b[i]), &a[i]).is_lt())
}

/// `γ(a, b)`: 1-based index of the first collapsing `a_i ⊖ b_i`, or `k + 1`.
pub fn gamma(base: &dyn PreferenceAlgebra, a: &LexTuple, b: &LexTuple) -> Result<usize> {
    same_arity(a, b)?;
    let r = pointwise_residuals(base, &a.components, &b.components)?;
    Ok(gamma_index(base, &r).map_or(a.arity() + 1, |i| i + 1))
}

/// `δ(a, b)`: 1-based index of the first `i` with `(a_i ⊖ b_i) ⊗ b_i < a_i`,
/// or `k + 1`. Incomparable outcomes do not count.
pub fn delta(base: &dyn PreferenceAlgebra, a: &LexTuple, b: &LexTuple) -> Result<usize> {
    same_arity(a, b)?;
    let r = pointwise_residuals(base, &a.components, &b.components)?;
    Ok(delta_index(base, &r, &a.components, &b.components).map_or(a.arity() + 1, |i| i + 1))
}

/// `⋁Lex_n(A)`: `⊤^n` when `⊤` is cancellative, `⊤⊥^{n−1}` otherwise.
pub fn lex_top(base: &dyn PreferenceAlgebra, n: usize) -> Result<LexTuple> {
    Ok(LexTuple {
        components: top_run(base, n)?,
    })
}

fn top_run(base: &dyn PreferenceAlgebra, n: usize) -> Result<Vec<Value>> {
    let top = base
        .top()
        .ok_or_else(|| Error::Unsupported(format!("{} has no top element", base.name())))?;
    if n == 0 {
        return Ok(Vec::new());
    }
    if base.is_collapsing(&top) {
        let mut run = vec![top];
        run.resize(n, base.bottom());
        Ok(run)
    } else {
        Ok(vec![top; n])
    }
}

/// The residual `a ⊖_k b`.
///
/// With `γ = δ = k + 1` it is pointwise. When `γ ≤ δ` and `γ ≤ k` it is
/// pointwise up to `γ` and `⊥` afterwards. Otherwise it is pointwise up to
/// `δ` followed by `⋁Lex_{k−δ}(A)`.
pub fn lex_residual(base: &dyn PreferenceAlgebra, a: &LexTuple, b: &LexTuple) -> Result<LexTuple> {
    same_arity(a, b)?;
    let k = a.arity();
    let mut r = pointwise_residuals(base, &a.components, &b.components)?;
    let g = gamma_index(base, &r);
    let d = delta_index(base, &r, &a.components, &b.components);
    match (g, d) {
        (None, None) => {}
        (Some(g), d) if d.is_none_or(|d| g <= d) => {
            r.truncate(g + 1);
            r.resize(k, base.bottom());
        }
        (_, Some(d)) => {
            r.truncate(d + 1);
            r.extend(top_run(base, k - d - 1)?);
        }
        (Some(_), None) => unreachable!("covered by the γ ≤ δ arm"),
    }
    Ok(LexTuple { components: r })
}

/// Every tuple of `Lex_k(A)` over a finite base, in base enumeration order.
pub fn enumerate_lex(base: &dyn PreferenceAlgebra, k: usize) -> Result<Vec<LexTuple>> {
    let elements = base
        .elements()
        .ok_or_else(|| Error::Unsupported(format!("{} has an infinite carrier", base.name())))?;
    Ok(lex_rows(base, &elements, k)
        .into_iter()
        .map(|components| LexTuple { components })
        .collect())
}

fn lex_rows(base: &dyn PreferenceAlgebra, elements: &[Value], k: usize) -> Vec<Vec<Value>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let rest = lex_rows(base, elements, k - 1);
    let mut out = Vec::new();
    for e in elements {
        if base.is_collapsing(e) {
            let mut row = vec![e.clone()];
            row.resize(k, base.bottom());
            out.push(row);
        } else {
            for tail in &rest {
                let mut row = vec![e.clone()];
                row.extend(tail.iter().cloned());
                out.push(row);
            }
        }
    }
    out
}

/// `Lex_k(A)` as a [`PreferenceAlgebra`].
#[derive(Debug, Clone)]
pub struct LexAlgebra {
    base: Algebra,
    k: usize,
}

impl LexAlgebra {
    /// Requires `k ≥ 1` and a residuated base whose bottom annihilates.
    pub fn new(base: Algebra, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Construction("lex arity must be positive".into()));
        }
        require_lex_base(&*base)?;
        Ok(LexAlgebra { base, k })
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn tuple<'v>(&self, v: &'v Value) -> &'v LexTuple {
        v.as_lex()
            .unwrap_or_else(|| panic!("lex operation on foreign value {v:?}"))
    }

    fn wrap(&self, r: Result<LexTuple>) -> Value {
        Value::Lex(r.expect("lex operands of matching arity"))
    }
}

pub(crate) fn require_lex_base(base: &dyn PreferenceAlgebra) -> Result<()> {
    let p = base.properties();
    if !p.residuated || !p.zero_bottom {
        return Err(Error::Construction(format!(
            "lexicographic construction needs a residuated base with an annihilating bottom, got {}",
            base.name()
        )));
    }
    Ok(())
}

impl PreferenceAlgebra for LexAlgebra {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec::lex(self.base.spec(), self.k)
    }

    fn contains(&self, v: &Value) -> bool {
        v.as_lex().is_some_and(|t| {
            t.arity() == self.k && validate_stream(&*self.base, t.components(), None).is_ok()
        })
    }

    fn elements(&self) -> Option<Vec<Value>> {
        enumerate_lex(&*self.base, self.k)
            .ok()
            .map(|ts| ts.into_iter().map(Value::Lex).collect())
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Value {
        let bot = self.base.bottom();
        let mut components = Vec::with_capacity(self.k);
        while components.len() < self.k {
            let v = self.base.sample(rng);
            let collapsing = self.base.is_collapsing(&v);
            components.push(v);
            if collapsing {
                components.resize(self.k, bot.clone());
            }
        }
        Value::Lex(LexTuple { components })
    }

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation {
        lex_compare(&*self.base, self.tuple(a), self.tuple(b)).expect("lex operands of matching arity")
    }

    fn combine(&self, a: &Value, b: &Value) -> Value {
        self.wrap(lex_combine(&*self.base, self.tuple(a), self.tuple(b)))
    }

    fn identity(&self) -> Value {
        Value::Lex(LexTuple {
            components: vec![self.base.identity(); self.k],
        })
    }

    fn bottom(&self) -> Value {
        Value::Lex(LexTuple {
            components: vec![self.base.bottom(); self.k],
        })
    }

    fn top(&self) -> Option<Value> {
        lex_top(&*self.base, self.k).ok().map(Value::Lex)
    }

    fn join(&self, items: &[Value]) -> Value {
        let tuples: Vec<LexTuple> = items.iter().map(|v| self.tuple(v).clone()).collect();
        self.wrap(lex_join(&*self.base, self.k, &tuples))
    }

    fn residual(&self, a: &Value, b: &Value) -> Result<Value> {
        lex_residual(&*self.base, self.tuple(a), self.tuple(b)).map(Value::Lex)
    }

    /// A tuple is cancellative exactly when all of its components are.
    fn is_collapsing(&self, a: &Value) -> bool {
        self.tuple(a).components().iter().any(|c| self.base.is_collapsing(c))
    }

    fn properties(&self) -> Properties {
        Properties {
            residuated: true,
            distributive: self.base.properties().distributive,
            zero_bottom: true,
        }
    }

    fn structure(&self) -> Structure<'_> {
        Structure::Lex {
            base: &self.base,
            k: self.k,
        }
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value> {
        let items = json
            .as_array()
            .ok_or_else(|| Error::Parse(format!("lex value must be an array: {json}")))?;
        if items.len() != self.k {
            return Err(Error::ArityMismatch {
                left: self.k,
                right: items.len(),
            });
        }
        let components = items
            .iter()
            .map(|c| self.base.parse_value(c))
            .collect::<Result<Vec<_>>>()?;
        lex_make(&*self.base, components).map(Value::Lex)
    }

    fn value_to_json(&self, v: &Value) -> serde_json::Value {
        self.tuple(v)
            .components()
            .iter()
            .map(|c| self.base.value_to_json(c))
            .collect()
    }
}
