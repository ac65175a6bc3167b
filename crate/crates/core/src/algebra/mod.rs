//! The contract of a partially ordered residuated monoid, plus the
//! brute-force oracles every closed-form instance is certified against.

mod laws;

use std::fmt;
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::instances::InstanceSpec;
use crate::value::Value;

pub use laws::{check_laws, Budget, LawReport, LawStatus, LawVerdict, DEFAULT_SEED};

/// Outcome of comparing two carrier elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderRelation {
    Less,
    Equal,
    Greater,
    Incomparable,
}

impl OrderRelation {
    pub fn reverse(self) -> Self {
        match self {
            OrderRelation::Less => OrderRelation::Greater,
            OrderRelation::Greater => OrderRelation::Less,
            other => other,
        }
    }

    /// `LT` or `EQ`.
    pub fn is_le(self) -> bool {
        matches!(self, OrderRelation::Less | OrderRelation::Equal)
    }

    pub fn is_lt(self) -> bool {
        self == OrderRelation::Less
    }

    pub fn from_ordering(o: std::cmp::Ordering) -> Self {
        match o {
            std::cmp::Ordering::Less => OrderRelation::Less,
            std::cmp::Ordering::Equal => OrderRelation::Equal,
            std::cmp::Ordering::Greater => OrderRelation::Greater,
        }
    }

    /// Derives the relation from the two `≤` tests of a partial order.
    pub fn from_le(a_le_b: bool, b_le_a: bool) -> Self {
        match (a_le_b, b_le_a) {
            (true, true) => OrderRelation::Equal,
            (true, false) => OrderRelation::Less,
            (false, true) => OrderRelation::Greater,
            (false, false) => OrderRelation::Incomparable,
        }
    }
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderRelation::Less => "LT",
            OrderRelation::Equal => "EQ",
            OrderRelation::Greater => "GT",
            OrderRelation::Incomparable => "INCOMPARABLE",
        })
    }
}

/// Structural flags an instance declares about itself. The law harness
/// decides which laws apply from these and then checks them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Properties {
    pub residuated: bool,
    pub distributive: bool,
    /// `⊥` annihilates under combine.
    pub zero_bottom: bool,
}

/// How an instance is assembled from other instances.
#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    Atomic,
    Product(&'a Algebra, &'a Algebra),
    Lex { base: &'a Algebra, k: usize },
    Omega { base: &'a Algebra },
}

/// A partially ordered monoid with bottom, optionally residuated.
///
/// Methods taking [`Value`]s assume their arguments belong to the carrier;
/// the free functions of this module ([`leq`], [`residual`], ...) check
/// membership first and are the entry points for untrusted values.
pub trait PreferenceAlgebra: fmt::Debug + Send + Sync {
    fn spec(&self) -> InstanceSpec;

    fn contains(&self, v: &Value) -> bool;

    /// Every carrier element, when the carrier is finite.
    fn elements(&self) -> Option<Vec<Value>> {
        None
    }

    /// Draws a carrier element. Used by sampled law checks and generators.
    fn sample(&self, rng: &mut dyn RngCore) -> Value;

    fn compare(&self, a: &Value, b: &Value) -> OrderRelation;

    fn combine(&self, a: &Value, b: &Value) -> Value;

    fn identity(&self) -> Value;

    fn bottom(&self) -> Value;

    fn top(&self) -> Option<Value>;

    /// Least upper bound of a finite set; `join(&[])` is the bottom.
    fn join(&self, items: &[Value]) -> Value;

    fn residual(&self, a: &Value, b: &Value) -> Result<Value>;

    /// Membership in `C(A)`, the complement of the cancellative elements.
    fn is_collapsing(&self, a: &Value) -> bool;

    /// Membership in `C'(A)`: some `x < y` with `x ⊗ a = y ⊗ a`.
    fn is_weakly_collapsing(&self, a: &Value) -> Result<bool> {
        if self.properties().distributive {
            return Ok(self.is_collapsing(a));
        }
        let elements = self.elements().ok_or_else(|| {
            Error::Unsupported(format!("C'(A) on the infinite carrier of {}", self.name()))
        })?;
        Ok(weak_collapsing_witness(self, a, &elements).is_some())
    }

    fn properties(&self) -> Properties;

    fn structure(&self) -> Structure<'_> {
        Structure::Atomic
    }

    fn parse_value(&self, json: &serde_json::Value) -> Result<Value>;

    fn value_to_json(&self, v: &Value) -> serde_json::Value;

    fn name(&self) -> String {
        serde_json::to_string(&self.spec()).unwrap_or_else(|_| "<algebra>".into())
    }
}

/// Shared handle to an instance.
pub type Algebra = Arc<dyn PreferenceAlgebra>;

fn ensure_member<A: PreferenceAlgebra + ?Sized>(alg: &A, v: &Value) -> Result<()> {
    if alg.contains(v) {
        Ok(())
    } else {
        Err(Error::domain(alg.name(), v))
    }
}

pub fn compare(alg: &dyn PreferenceAlgebra, a: &Value, b: &Value) -> Result<OrderRelation> {
    ensure_member(alg, a)?;
    ensure_member(alg, b)?;
    Ok(alg.compare(a, b))
}

pub fn leq(alg: &dyn PreferenceAlgebra, a: &Value, b: &Value) -> Result<bool> {
    Ok(compare(alg, a, b)?.is_le())
}

pub fn combine(alg: &dyn PreferenceAlgebra, a: &Value, b: &Value) -> Result<Value> {
    ensure_member(alg, a)?;
    ensure_member(alg, b)?;
    Ok(alg.combine(a, b))
}

pub fn residual(alg: &dyn PreferenceAlgebra, a: &Value, b: &Value) -> Result<Value> {
    ensure_member(alg, a)?;
    ensure_member(alg, b)?;
    alg.residual(a, b)
}

pub fn is_collapsing(alg: &dyn PreferenceAlgebra, a: &Value) -> Result<bool> {
    ensure_member(alg, a)?;
    Ok(alg.is_collapsing(a))
}

pub fn is_weakly_collapsing(alg: &dyn PreferenceAlgebra, a: &Value) -> Result<bool> {
    ensure_member(alg, a)?;
    alg.is_weakly_collapsing(a)
}

/// `⋁{c | b ⊗ c ≤ a}` over the whole (finite) carrier.
pub fn brute_force_residual(alg: &dyn PreferenceAlgebra, a: &Value, b: &Value) -> Result<Value> {
    ensure_member(alg, a)?;
    ensure_member(alg, b)?;
    let elements = alg.elements().ok_or_else(|| {
        Error::Unsupported(format!("brute-force residual on the infinite carrier of {}", alg.name()))
    })?;
    Ok(brute_force_residual_over(alg, a, b, &elements))
}

/// `⋁{c ∈ candidates | b ⊗ c ≤ a}`; the caller vouches that the candidate set
/// contains the maximal sub-solutions (e.g. a clipped infinite carrier).
pub fn brute_force_residual_over(
    alg: &dyn PreferenceAlgebra,
    a: &Value,
    b: &Value,
    candidates: &[Value],
) -> Value {
    let subsolutions: Vec<Value> = candidates
        .iter()
        .filter(|c| alg.compare(&alg.combine(b, c), a).is_le())
        .cloned()
        .collect();
    alg.join(&subsolutions)
}

/// A distinct pair `x ≠ y` with `x ⊗ a = y ⊗ a`, if one exists among `elements`.
pub fn collapsing_witness<A: PreferenceAlgebra + ?Sized>(
    alg: &A,
    a: &Value,
    elements: &[Value],
) -> Option<(Value, Value)> {
    let products: Vec<Value> = elements.iter().map(|x| alg.combine(x, a)).collect();
    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            if products[i] == products[j] {
                return Some((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    None
}

/// A pair `x < y` with `x ⊗ a = y ⊗ a`, if one exists among `elements`.
pub fn weak_collapsing_witness<A: PreferenceAlgebra + ?Sized>(
    alg: &A,
    a: &Value,
    elements: &[Value],
) -> Option<(Value, Value)> {
    let products: Vec<Value> = elements.iter().map(|x| alg.combine(x, a)).collect();
    for i in 0..elements.len() {
        for j in 0..elements.len() {
            if products[i] == products[j] && alg.compare(&elements[i], &elements[j]).is_lt() {
                return Some((elements[i].clone(), elements[j].clone()));
            }
        }
    }
    None
}

/// Exhaustive decomposition of a finite carrier into `I(A)` and `C(A)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollapsingAnalysis {
    pub collapsing: Vec<Value>,
    pub cancellative: Vec<Value>,
    /// Failures of "I(A) is a sub-monoid" and "C(A) is a prime ideal".
    pub violations: Vec<String>,
}

/// Computes `C(A)` by exhaustive pair search and verifies the ideal structure.
pub fn collapsing_oracle(alg: &dyn PreferenceAlgebra) -> Result<CollapsingAnalysis> {
    let elements = alg.elements().ok_or_else(|| {
        Error::Unsupported(format!("collapsing oracle on the infinite carrier of {}", alg.name()))
    })?;
    let flags: Vec<bool> = elements
        .iter()
        .map(|c| collapsing_witness(alg, c, &elements).is_some())
        .collect();
    let in_c = |v: &Value| -> bool {
        elements
            .iter()
            .position(|e| e == v)
            .map(|i| flags[i])
            .unwrap_or(false)
    };

    let mut violations = Vec::new();
    if in_c(&alg.identity()) {
        violations.push(format!("identity {} is collapsing", alg.identity()));
    }
    for (i, a) in elements.iter().enumerate() {
        for (j, b) in elements.iter().enumerate() {
            let ab = alg.combine(a, b);
            let collapsed = in_c(&ab);
            if !flags[i] && !flags[j] && collapsed {
                violations.push(format!("I(A) not closed: {a} ⊗ {b} = {ab} is collapsing"));
            }
            if flags[j] && !collapsed {
                violations.push(format!("C(A) not an ideal: {a} ⊗ {b} = {ab} is cancellative"));
            }
        }
    }

    let mut collapsing = Vec::new();
    let mut cancellative = Vec::new();
    for (e, f) in elements.into_iter().zip(flags) {
        if f {
            collapsing.push(e);
        } else {
            cancellative.push(e);
        }
    }
    Ok(CollapsingAnalysis {
        collapsing,
        cancellative,
        violations,
    })
}

/// Computes `C'(A)` by exhaustive search.
pub fn weakly_collapsing_oracle(alg: &dyn PreferenceAlgebra) -> Result<Vec<Value>> {
    let elements = alg.elements().ok_or_else(|| {
        Error::Unsupported(format!("C'(A) oracle on the infinite carrier of {}", alg.name()))
    })?;
    Ok(elements
        .iter()
        .filter(|c| weak_collapsing_witness(alg, c, &elements).is_some())
        .cloned()
        .collect())
}
