//! Carrier elements shared by every algebra instance.
//!
//! A [`Value`] is a tagged union: each instance kind owns one variant and the
//! combinators (product, lexicographic tuples, eventually-constant streams)
//! nest other values. Equality is structural; every instance keeps its values
//! in a canonical representation so structural equality is carrier equality.

use std::fmt;

use crate::lex::{LexTuple, OmegaTuple};

/// Element of `N ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cost {
    Finite(u64),
    Infinite,
}

/// Element of `Z ∪ {±∞}`. The derived ordering is the natural one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Finite(i64),
    PosInf,
}

/// Element of `[0..n] ∪ {⊥, ⊤}` under the flat order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flat {
    Bot,
    Num(u32),
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Tropical(Cost),
    Int(ExtInt),
    /// Level of a finite chain `0..=n`.
    Level(u32),
    /// Subset of a power-set universe, as a bit mask over universe indices.
    Set(u64),
    Flat(Flat),
    Pair(Box<(Value, Value)>),
    Lex(LexTuple),
    Omega(OmegaTuple),
}

impl Value {
    pub fn finite(n: u64) -> Value {
        Value::Tropical(Cost::Finite(n))
    }

    pub fn infinite() -> Value {
        Value::Tropical(Cost::Infinite)
    }

    pub fn int(n: i64) -> Value {
        Value::Int(ExtInt::Finite(n))
    }

    pub fn pair(left: Value, right: Value) -> Value {
        Value::Pair(Box::new((left, right)))
    }

    pub fn as_pair(&self) -> Option<(&Value, &Value)> {
        match self {
            Value::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn as_lex(&self) -> Option<&LexTuple> {
        match self {
            Value::Lex(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_omega(&self) -> Option<&OmegaTuple> {
        match self {
            Value::Omega(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Tropical(Cost::Finite(n)) => write!(f, "{n}"),
            Value::Tropical(Cost::Infinite) => f.write_str("inf"),
            Value::Int(ExtInt::Finite(n)) => write!(f, "{n}"),
            Value::Int(ExtInt::PosInf) => f.write_str("inf"),
            Value::Int(ExtInt::NegInf) => f.write_str("-inf"),
            Value::Level(n) => write!(f, "{n}"),
            Value::Set(mask) => {
                f.write_str("{")?;
                let mut first = true;
                for i in 0..64 {
                    if mask & (1 << i) != 0 {
                        if !first {
                            f.write_str(",")?;
                        }
                        write!(f, "#{i}")?;
                        first = false;
                    }
                }
                f.write_str("}")
            }
            Value::Flat(Flat::Bot) => f.write_str("bot"),
            Value::Flat(Flat::Top) => f.write_str("top"),
            Value::Flat(Flat::Num(n)) => write!(f, "{n}"),
            Value::Pair(p) => write!(f, "<{}, {}>", p.0, p.1),
            Value::Lex(t) => {
                f.write_str("[")?;
                for (i, c) in t.components().iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")
            }
            Value::Omega(t) => {
                f.write_str("[")?;
                for c in t.prefix() {
                    write!(f, "{c}, ")?;
                }
                write!(f, "{}...]", t.tail().as_str())
            }
        }
    }
}
