//! Brute-force semantics for the subset: domain grounding, expression
//! evaluation and exhaustive solving. Booleans are `Int(0)` / `Int(1)`;
//! `forAll` over an empty collection is true and `sum` over one is 0.

mod domain;
mod expr;
mod solve;

use std::collections::BTreeMap;

use crate::essence::params::parse_bindings;
use crate::essence::{DeclBody, DeclKind, ParseError, Specification};
use crate::value::Value;

pub use domain::{cardinality, contains, ground, resolve_domain, GroundDomain, ResolvedDomain};
pub use expr::{eval_expr, Evaluator};
pub use solve::{check_constraints, solve, solve_with, SolveOptions, Solution};

/// Adjusts a parsed value to the shape `d` expects (sets of tuples become
/// relations and vice versa).
pub fn coerce_value(v: &Value, d: &ResolvedDomain) -> Value {
    domain::coerce(v, d)
}

/// Default refusal threshold for grounding and for solve's candidate count.
pub const DEFAULT_MAX_GROUND: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("domain too large: {count} values exceed the limit of {cap}")]
    TooLarge { count: String, cap: u128 },
    #[error("unbound identifier `{0}`")]
    UnboundIdentifier(String),
    #[error("negative size {0}")]
    NegativeSize(i64),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("function applied outside its defined set: {0}")]
    PartialApplication(String),
    #[error("tuple index {index} out of range for a {arity}-tuple")]
    IndexOutOfArity { index: u32, arity: usize },
    #[error("integer overflow in {0}")]
    Overflow(String),
    #[error("unbounded domain `{0}` cannot be enumerated")]
    Unbounded(String),
    #[error("missing value for given `{0}`")]
    MissingGiven(String),
    #[error("value {value} for `{name}` is outside its domain {domain}")]
    DomainViolation { name: String, value: String, domain: String },
    #[error("specification has no find declaration")]
    NoFind,
    #[error("in {context}: {source}")]
    Context { context: String, source: Box<EvalError> },
}

impl EvalError {
    pub fn context(self, context: impl Into<String>) -> Self {
        EvalError::Context { context: context.into(), source: Box::new(self) }
    }

    /// The innermost error, without context wrappers.
    pub fn root(&self) -> &EvalError {
        match self {
            EvalError::Context { source, .. } => source.root(),
            e => e,
        }
    }

    pub fn is_too_large(&self) -> bool {
        matches!(self.root(), EvalError::TooLarge { .. })
    }
}

/// A binding of `given` names to values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Instance {
    pub bindings: BTreeMap<String, Value>,
}

impl Instance {
    pub fn new(bindings: impl IntoIterator<Item = (impl Into<String>, Value)>) -> Self {
        Instance { bindings: bindings.into_iter().map(|(k, v)| (k.into(), v)).collect() }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        Ok(Instance { bindings: parse_bindings(text)?.into_iter().collect() })
    }

    pub fn with(mut self, name: impl Into<String>, value: Value) -> Self {
        self.bindings.insert(name.into(), value);
        self
    }

    pub fn to_param_text(&self) -> String {
        crate::essence::params::print_bindings(self.bindings.iter().map(|(k, v)| (k.as_str(), v)))
    }
}

/// Values of givens and value-lettings, and resolved domain-lettings.
#[derive(Debug, Clone, Default)]
pub struct Env {
    pub values: BTreeMap<String, Value>,
    pub domains: BTreeMap<String, ResolvedDomain>,
    pub max_ground: u128,
}

impl Env {
    pub fn new() -> Self {
        Env { max_ground: DEFAULT_MAX_GROUND, ..Default::default() }
    }

    /// Builds the environment for `spec` under `inst`: every given must be
    /// bound and inhabit its declared domain. Extra bindings are ignored.
    pub fn for_instance(spec: &Specification, inst: &Instance, max_ground: u128) -> Result<Env, EvalError> {
        let mut env = Env { max_ground, ..Default::default() };
        for decl in &spec.declarations {
            let ctx = || format!("declaration of `{}`", decl.name);
            match (&decl.kind, &decl.body) {
                (DeclKind::Given, DeclBody::Domain(d)) => {
                    let v = inst.bindings.get(&decl.name).ok_or_else(|| EvalError::MissingGiven(decl.name.clone()))?;
                    let rd = resolve_domain(d, &env).map_err(|e| e.context(ctx()))?;
                    let v = domain::coerce(v, &rd);
                    if !contains(&rd, &v) {
                        return Err(EvalError::DomainViolation {
                            name: decl.name.clone(),
                            value: v.to_string(),
                            domain: crate::essence::print_domain(d),
                        });
                    }
                    env.values.insert(decl.name.clone(), v);
                }
                (DeclKind::LettingDomain, DeclBody::Domain(d)) => {
                    let rd = resolve_domain(d, &env).map_err(|e| e.context(ctx()))?;
                    env.domains.insert(decl.name.clone(), rd);
                }
                (DeclKind::LettingValue, DeclBody::Value(e)) => {
                    let v = eval_expr(e, &env).map_err(|e| e.context(ctx()))?;
                    env.values.insert(decl.name.clone(), v);
                }
                _ => {}
            }
        }
        Ok(env)
    }

    pub fn with_value(mut self, name: impl Into<String>, v: Value) -> Self {
        self.values.insert(name.into(), v);
        self
    }
}
