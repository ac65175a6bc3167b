//! Residuated partially ordered monoids, their lexicographic products, and
//! soft-constraint solvers parameterized by them.

pub mod algebra;
pub mod csp;
pub mod error;
pub mod instances;
pub mod lex;
pub mod solve;
pub mod value;

pub use algebra::{Algebra, OrderRelation, PreferenceAlgebra, Properties};
pub use error::{Error, Result};
pub use instances::{make_algebra, InstanceSpec};
pub use value::Value;
