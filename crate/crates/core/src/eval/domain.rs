use std::collections::BTreeSet;

use itertools::Itertools;

use super::{eval_expr, Env, EvalError};
use crate::essence::{AttrName, Domain};
use crate::value::Value;

/// A domain with every size and bound evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolvedDomain {
    Int { lo: Option<i64>, hi: Option<i64> },
    Set { size: Option<u64>, elem: Box<ResolvedDomain> },
    Relation { size: Option<u64>, irreflexive: bool, comps: Vec<ResolvedDomain> },
    Function { total: bool, size: Option<u64>, from: Box<ResolvedDomain>, to: Box<ResolvedDomain> },
    Tuple(Vec<ResolvedDomain>),
}

fn size_attr(d: &Domain, env: &Env) -> Result<Option<u64>, EvalError> {
    let Some(a) = d.attr(AttrName::Size) else { return Ok(None) };
    let e = a.arg.as_ref().expect("size carries an argument");
    let v = eval_expr(e, env)?;
    let k = v.as_int().ok_or_else(|| EvalError::TypeMismatch(format!("size must be an integer, got {v}")))?;
    u64::try_from(k).map(Some).map_err(|_| EvalError::NegativeSize(k))
}

fn int_of(e: &crate::essence::Expr, env: &Env) -> Result<i64, EvalError> {
    let v = eval_expr(e, env)?;
    v.as_int().ok_or_else(|| EvalError::TypeMismatch(format!("bound must be an integer, got {v}")))
}

pub fn resolve_domain(d: &Domain, env: &Env) -> Result<ResolvedDomain, EvalError> {
    Ok(match d {
        Domain::IntUnbounded => ResolvedDomain::Int { lo: None, hi: None },
        Domain::IntRange { lo, hi } => ResolvedDomain::Int {
            lo: lo.as_deref().map(|e| int_of(e, env)).transpose()?,
            hi: hi.as_deref().map(|e| int_of(e, env)).transpose()?,
        },
        Domain::Named(n) => env.domains.get(n).cloned().ok_or_else(|| EvalError::UnboundIdentifier(n.clone()))?,
        Domain::Set { element, .. } => {
            ResolvedDomain::Set { size: size_attr(d, env)?, elem: Box::new(resolve_domain(element, env)?) }
        }
        Domain::Relation { components, .. } => ResolvedDomain::Relation {
            size: size_attr(d, env)?,
            irreflexive: d.attr(AttrName::Irreflexive).is_some(),
            comps: components.iter().map(|c| resolve_domain(c, env)).collect::<Result<_, _>>()?,
        },
        Domain::Function { from, to, .. } => ResolvedDomain::Function {
            total: d.attr(AttrName::Total).is_some(),
            size: size_attr(d, env)?,
            from: Box::new(resolve_domain(from, env)?),
            to: Box::new(resolve_domain(to, env)?),
        },
        Domain::Tuple(comps) => {
            ResolvedDomain::Tuple(comps.iter().map(|c| resolve_domain(c, env)).collect::<Result<_, _>>()?)
        }
    })
}

/// Membership test that never enumerates the domain.
pub fn contains(d: &ResolvedDomain, v: &Value) -> bool {
    match (d, v) {
        (ResolvedDomain::Int { lo, hi }, Value::Int(i)) => lo.is_none_or(|l| *i >= l) && hi.is_none_or(|h| *i <= h),
        (ResolvedDomain::Set { size, elem }, Value::Set(s) | Value::Relation(s)) => {
            size.is_none_or(|k| s.len() as u64 == k) && s.iter().all(|x| contains(elem, x))
        }
        (ResolvedDomain::Relation { size, irreflexive, comps }, Value::Relation(s) | Value::Set(s)) => {
            size.is_none_or(|k| s.len() as u64 == k)
                && s.iter().all(|t| match t {
                    Value::Tuple(xs) => {
                        xs.len() == comps.len()
                            && xs.iter().zip(comps).all(|(x, c)| contains(c, x))
                            && !(*irreflexive && xs.len() == 2 && xs[0] == xs[1])
                    }
                    _ => false,
                })
        }
        (ResolvedDomain::Function { total, size, from, to }, Value::Function(m)) => {
            m.iter().all(|(k, x)| contains(from, k) && contains(to, x))
                && size.is_none_or(|k| m.len() as u64 == k)
                && (!*total || count(from).is_ok_and(|n| n == m.len() as u128))
        }
        (ResolvedDomain::Tuple(comps), Value::Tuple(xs)) => {
            xs.len() == comps.len() && xs.iter().zip(comps).all(|(x, c)| contains(c, x))
        }
        _ => false,
    }
}

/// Adjusts a parsed literal to the shape its domain expects: `{}` or a set
/// of tuples becomes a relation, and vice versa.
pub(crate) fn coerce(v: &Value, d: &ResolvedDomain) -> Value {
    match (d, v) {
        (ResolvedDomain::Relation { .. }, Value::Set(s)) => Value::Relation(s.clone()),
        (ResolvedDomain::Set { elem, .. }, Value::Set(s) | Value::Relation(s)) => {
            Value::set(s.iter().map(|x| coerce(x, elem)))
        }
        (ResolvedDomain::Function { from, to, .. }, Value::Function(m)) => {
            Value::function(m.iter().map(|(k, x)| (coerce(k, from), coerce(x, to))))
        }
        (ResolvedDomain::Tuple(comps), Value::Tuple(xs)) if comps.len() == xs.len() => {
            Value::tuple(xs.iter().zip(comps).map(|(x, c)| coerce(x, c)))
        }
        _ => v.clone(),
    }
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

const OVERFLOW: &str = "more than 2^128";

fn too_large(cap: u128) -> EvalError {
    EvalError::TooLarge { count: OVERFLOW.to_string(), cap }
}

/// Exact number of values in `d` (inner domains are enumerated only where
/// the count depends on their contents, e.g. irreflexive relations).
fn count(d: &ResolvedDomain) -> Result<u128, EvalError> {
    count_capped(d, u128::MAX)
}

fn count_capped(d: &ResolvedDomain, cap: u128) -> Result<u128, EvalError> {
    let of = |x: Option<u128>| x.ok_or_else(|| too_large(cap));
    Ok(match d {
        ResolvedDomain::Int { lo: Some(l), hi: Some(h) } => {
            if h < l {
                0
            } else {
                (*h as i128 - *l as i128 + 1) as u128
            }
        }
        ResolvedDomain::Int { .. } => return Err(EvalError::Unbounded(format!("{d:?}"))),
        ResolvedDomain::Set { size, elem } => {
            let n = count_capped(elem, cap)?;
            match size {
                Some(k) => of(binomial(n, *k as u128))?,
                None => of(u32::try_from(n).ok().and_then(|n| 2u128.checked_pow(n)))?,
            }
        }
        ResolvedDomain::Relation { size, .. } => {
            let n = relation_tuples(d, cap)?.len() as u128;
            match size {
                Some(k) => of(binomial(n, *k as u128))?,
                None => of(u32::try_from(n).ok().and_then(|n| 2u128.checked_pow(n)))?,
            }
        }
        ResolvedDomain::Function { total, size, from, to } => {
            let a = count_capped(from, cap)?;
            let b = count_capped(to, cap)?;
            let pow = |base: u128, e: u128| u32::try_from(e).ok().and_then(|e| base.checked_pow(e));
            match (total, size) {
                (true, Some(k)) if *k as u128 != a => 0,
                (true, _) => of(pow(b, a))?,
                (false, Some(k)) => of(binomial(a, *k as u128).and_then(|c| c.checked_mul(pow(b, *k as u128)?)))?,
                (false, None) => of(pow(b.checked_add(1).ok_or_else(|| too_large(cap))?, a))?,
            }
        }
        ResolvedDomain::Tuple(comps) => {
            let mut acc: u128 = 1;
            for c in comps {
                acc = of(acc.checked_mul(count_capped(c, cap)?))?;
            }
            acc
        }
    })
}

/// Number of values in `d`; errors if it cannot be represented.
pub fn cardinality(d: &ResolvedDomain) -> Result<u128, EvalError> {
    count(d)
}

fn materialize(d: &ResolvedDomain, cap: u128) -> Result<Vec<Value>, EvalError> {
    Ok(ground_resolved(d, cap)?.iter().collect())
}

fn relation_tuples(d: &ResolvedDomain, cap: u128) -> Result<Vec<Value>, EvalError> {
    let ResolvedDomain::Relation { irreflexive, comps, .. } = d else { unreachable!() };
    let base = ResolvedDomain::Tuple(comps.clone());
    let mut tuples = materialize(&base, cap)?;
    if *irreflexive && comps.len() == 2 {
        tuples.retain(|t| match t {
            Value::Tuple(xs) => xs[0] != xs[1],
            _ => true,
        });
    }
    Ok(tuples)
}

#[derive(Debug, Clone)]
enum Plan {
    Ints(i64, i64),
    Subsets { elems: Vec<Value>, size: Option<usize>, relation: bool },
    Functions { from: Vec<Value>, to: Vec<Value>, total: bool, size: Option<usize> },
    Tuples(Vec<Vec<Value>>),
}

/// The finite set of values inhabiting a domain, enumerated lazily in a
/// fixed canonical order.
#[derive(Debug, Clone)]
pub struct GroundDomain {
    count: u128,
    plan: Plan,
}

impl GroundDomain {
    pub fn len(&self) -> u128 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> Box<dyn Iterator<Item = Value> + Send + '_> {
        match &self.plan {
            Plan::Ints(lo, hi) => Box::new((*lo..=*hi).map(Value::Int)),
            Plan::Subsets { elems, size, relation } => {
                let wrap = *relation;
                let make = move |xs: Vec<&Value>| {
                    let set: BTreeSet<Value> = xs.into_iter().cloned().collect();
                    if wrap {
                        Value::Relation(set.into())
                    } else {
                        Value::Set(set.into())
                    }
                };
                match size {
                    Some(k) if *k > elems.len() => Box::new(std::iter::empty()),
                    Some(0) => Box::new(std::iter::once(make(Vec::new()))),
                    Some(k) => Box::new(elems.iter().combinations(*k).map(make)),
                    None => Box::new(elems.iter().powerset().map(make)),
                }
            }
            Plan::Functions { from, to, total, size } => {
                if from.is_empty() {
                    let ok = size.is_none_or(|k| k == 0);
                    return Box::new(ok.then(|| Value::function([])).into_iter());
                }
                let slots: Vec<Option<&Value>> =
                    if *total { to.iter().map(Some).collect() } else { std::iter::once(None).chain(to.iter().map(Some)).collect() };
                let size = *size;
                Box::new(
                    (0..from.len())
                        .map(move |_| slots.clone().into_iter())
                        .multi_cartesian_product()
                        .filter(move |choice| size.is_none_or(|k| choice.iter().flatten().count() == k))
                        .map(move |choice| {
                            Value::function(
                                from.iter().zip(choice).filter_map(|(k, v)| v.map(|v| (k.clone(), v.clone()))),
                            )
                        }),
                )
            }
            Plan::Tuples(comps) => {
                if comps.is_empty() {
                    return Box::new(std::iter::once(Value::tuple([])));
                }
                Box::new(
                    comps.iter().map(|c| c.iter()).multi_cartesian_product().map(|xs| Value::tuple(xs.into_iter().cloned())),
                )
            }
        }
    }
}

fn ground_resolved(d: &ResolvedDomain, cap: u128) -> Result<GroundDomain, EvalError> {
    let count = count_capped(d, cap)?;
    if count > cap {
        return Err(EvalError::TooLarge { count: count.to_string(), cap });
    }
    let plan = match d {
        ResolvedDomain::Int { lo: Some(l), hi: Some(h) } => Plan::Ints(*l, *h),
        ResolvedDomain::Int { .. } => return Err(EvalError::Unbounded(format!("{d:?}"))),
        ResolvedDomain::Set { size, elem } => {
            Plan::Subsets { elems: materialize(elem, cap)?, size: size.map(|k| k as usize), relation: false }
        }
        ResolvedDomain::Relation { size, .. } => {
            Plan::Subsets { elems: relation_tuples(d, cap)?, size: size.map(|k| k as usize), relation: true }
        }
        ResolvedDomain::Function { total, size, from, to } => Plan::Functions {
            from: materialize(from, cap)?,
            to: materialize(to, cap)?,
            total: *total,
            size: size.map(|k| k as usize),
        },
        ResolvedDomain::Tuple(comps) => {
            Plan::Tuples(comps.iter().map(|c| materialize(c, cap)).collect::<Result<_, _>>()?)
        }
    };
    Ok(GroundDomain { count, plan })
}

/// Grounds `d` under `env`, refusing with `TooLarge` above `env.max_ground`.
pub fn ground(d: &Domain, env: &Env) -> Result<GroundDomain, EvalError> {
    let rd = resolve_domain(d, env)?;
    ground_resolved(&rd, env.max_ground)
}

impl ResolvedDomain {
    pub fn ground(&self, cap: u128) -> Result<GroundDomain, EvalError> {
        ground_resolved(self, cap)
    }
}
