//! Ground values: the currency of the evaluator, parameter files, and the
//! solution converter.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

/// A nested ground value. Booleans are `Int(0)` / `Int(1)`.
///
/// Compound variants share their payload, so cloning is cheap. The derived
/// ordering is the canonical one: variants in declaration order, then
/// recursive lexicographic comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Int(i64),
    Tuple(Arc<[Value]>),
    Set(Arc<BTreeSet<Value>>),
    /// A set of `Tuple`s.
    Relation(Arc<BTreeSet<Value>>),
    /// Keys form the defined-set.
    Function(Arc<BTreeMap<Value, Value>>),
}

impl Value {
    pub fn bool(b: bool) -> Self {
        Value::Int(b as i64)
    }

    pub fn tuple(elems: impl IntoIterator<Item = Value>) -> Self {
        Value::Tuple(elems.into_iter().collect::<Vec<_>>().into())
    }

    pub fn pair(a: Value, b: Value) -> Self {
        Value::tuple([a, b])
    }

    pub fn set(elems: impl IntoIterator<Item = Value>) -> Self {
        Value::Set(Arc::new(elems.into_iter().collect()))
    }

    pub fn int_set(elems: impl IntoIterator<Item = i64>) -> Self {
        Value::set(elems.into_iter().map(Value::Int))
    }

    pub fn relation(tuples: impl IntoIterator<Item = Value>) -> Self {
        Value::Relation(Arc::new(tuples.into_iter().collect()))
    }

    /// Relation from integer pairs.
    pub fn int_relation(pairs: impl IntoIterator<Item = (i64, i64)>) -> Self {
        Value::relation(pairs.into_iter().map(|(a, b)| Value::pair(Value::Int(a), Value::Int(b))))
    }

    pub fn function(entries: impl IntoIterator<Item = (Value, Value)>) -> Self {
        Value::Function(Arc::new(entries.into_iter().collect()))
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "int",
            Value::Tuple(_) => "tuple",
            Value::Set(_) => "set",
            Value::Relation(_) => "relation",
            Value::Function(_) => "function",
        }
    }

    /// Members of a set or relation.
    pub fn members(&self) -> Option<&BTreeSet<Value>> {
        match self {
            Value::Set(s) | Value::Relation(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn join<'a>(f: &mut fmt::Formatter<'_>, items: impl Iterator<Item = &'a Value>) -> fmt::Result {
            for (i, v) in items.enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{v}")?;
            }
            Ok(())
        }
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Tuple(elems) => {
                f.write_str("(")?;
                join(f, elems.iter())?;
                f.write_str(")")
            }
            Value::Set(s) => {
                f.write_str("{")?;
                join(f, s.iter())?;
                f.write_str("}")
            }
            Value::Relation(s) => {
                f.write_str("relation(")?;
                join(f, s.iter())?;
                f.write_str(")")
            }
            Value::Function(m) => {
                f.write_str("function(")?;
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k} --> {v}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_structural() {
        let a = Value::int_set([2, 1]);
        let b = Value::int_set([1, 2]);
        assert_eq!(a, b);
        assert!(Value::int_set([1, 2]) < Value::int_set([1, 3]));
        assert!(Value::Int(5) < Value::tuple([Value::Int(0)]));
    }

    #[test]
    fn literal_syntax() {
        let f = Value::function([
            (Value::Int(0), Value::int_set([1, 2])),
            (Value::Int(1), Value::int_set([])),
        ]);
        assert_eq!(f.to_string(), "function(0 --> {1, 2}, 1 --> {})");
        assert_eq!(Value::int_relation([(1, 2), (0, 1)]).to_string(), "relation((0, 1), (1, 2))");
    }
}
