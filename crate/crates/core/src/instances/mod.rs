//! Concrete residuated POM instances and the Cartesian-product combinator.
//!
//! Instances are described by an [`InstanceSpec`], the JSON object
//! `{"kind": ...}` shared by the problem format and the command line, and
//! turned into a shared [`Algebra`] handle by [`make_algebra`].

mod chain;
mod ext_int;
mod flat;
mod powerset;
mod product;
mod tropical;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::lex::{LexAlgebra, OmegaAlgebra};

pub use chain::Chain;
pub use ext_int::ExtendedInt;
pub use flat::FlatCapped;
pub use powerset::PowerSet;
pub use product::Product;
pub use tropical::Tropical;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InstanceSpec {
    /// `⟨N ∪ {∞}, ≥, +, 0⟩`: costs, smaller is better.
    Tropical,
    /// `⟨Z ∪ {±∞}, ≤, +, 0⟩` with `+∞ + (−∞) = −∞`.
    ExtendedInt,
    /// `0..=n` with truncated addition, smaller is better.
    Chain { n: u32 },
    /// Subsets of a finite universe under union, ordered by reverse inclusion.
    #[serde(rename = "powerset")]
    PowerSet { universe: Vec<String> },
    /// `[0..n] ∪ {⊥, ⊤}` with the flat order and capped addition. Not residuated.
    FlatCapped { n: u32 },
    Product {
        left: Box<InstanceSpec>,
        right: Box<InstanceSpec>,
    },
    Lex { base: Box<InstanceSpec>, k: usize },
    LexOmega { base: Box<InstanceSpec> },
}

impl InstanceSpec {
    pub fn product(left: InstanceSpec, right: InstanceSpec) -> Self {
        InstanceSpec::Product {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn lex(base: InstanceSpec, k: usize) -> Self {
        InstanceSpec::Lex {
            base: Box::new(base),
            k,
        }
    }

    pub fn lex_omega(base: InstanceSpec) -> Self {
        InstanceSpec::LexOmega {
            base: Box::new(base),
        }
    }
}

pub fn make_algebra(spec: &InstanceSpec) -> Result<Algebra> {
    Ok(match spec {
        InstanceSpec::Tropical => Arc::new(Tropical),
        InstanceSpec::ExtendedInt => Arc::new(ExtendedInt),
        InstanceSpec::Chain { n } => Arc::new(Chain::new(*n)?),
        InstanceSpec::PowerSet { universe } => Arc::new(PowerSet::new(universe.clone())?),
        InstanceSpec::FlatCapped { n } => Arc::new(FlatCapped::new(*n)?),
        InstanceSpec::Product { left, right } => {
            Arc::new(Product::new(make_algebra(left)?, make_algebra(right)?))
        }
        InstanceSpec::Lex { base, k } => Arc::new(LexAlgebra::new(make_algebra(base)?, *k)?),
        InstanceSpec::LexOmega { base } => Arc::new(OmegaAlgebra::new(make_algebra(base)?)?),
    })
}

/// Parses a JSON algebra specification and builds the instance.
pub fn algebra_from_json(json: &serde_json::Value) -> Result<(InstanceSpec, Algebra)> {
    let spec: InstanceSpec = serde_json::from_value(json.clone())
        .map_err(|e| Error::Parse(format!("algebra specification: {e}")))?;
    let alg = make_algebra(&spec)?;
    Ok((spec, alg))
}

pub(crate) fn expect_u64(json: &serde_json::Value, what: &str) -> Result<u64> {
    json.as_u64()
        .ok_or_else(|| Error::Parse(format!("expected {what}, found {json}")))
}
