//! Solution conversion back to the original decision variable's type: the
//! declarative path (a generated converter specification) and a direct one.

use std::collections::{BTreeSet, HashSet};

use crate::essence::{
    print_declaration, print_expr, Binder, DeclBody, DeclKind, Declaration, Domain, Expr, QuantSource,
    Specification,
};
use crate::eval::{contains, resolve_domain, Env, EvalError, Evaluator, Instance};
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConvertError {
    #[error("find domains are identical; no conversion needed")]
    NoConversionNeeded,
    #[error("unsupported conversion: {0}")]
    Unsupported(String),
    #[error("converted value does not fit the original domain: {0}")]
    DomainMismatch(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Coarse type shape of a find domain, seen through domain lettings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Int,
    Set,
    Tuple,
    /// A relation with two components.
    BinaryRelation,
    Relation,
    FunctionOfSets,
    Function,
}

/// A bridge from the rewritten find's shape back to the original's.
pub struct BridgeTemplate {
    pub name: &'static str,
    pub from: Shape,
    pub to: Shape,
    /// `(find, solution, item, colour)` → bridging constraint.
    pub constraint: fn(&str, &str, &str, &str) -> Expr,
    pub convert: fn(&Value) -> Option<Value>,
}

fn function_of_sets_constraint(find: &str, solution: &str, item: &str, colour: &str) -> Expr {
    let inner = Expr::for_all(
        Binder::Name(colour.into()),
        QuantSource::Expr(Box::new(Expr::apply(solution, vec![Expr::ident(item)]))),
        Expr::apply(find, vec![Expr::ident(item), Expr::ident(colour)]),
    );
    Expr::for_all(
        Binder::Name(item.into()),
        QuantSource::Expr(Box::new(Expr::Defined(Box::new(Expr::ident(solution))))),
        inner,
    )
}

fn function_of_sets_convert(v: &Value) -> Option<Value> {
    let Value::Function(m) = v else { return None };
    let mut tuples = Vec::new();
    for (x, cs) in m.iter() {
        for c in cs.members()? {
            tuples.push(Value::pair(x.clone(), c.clone()));
        }
    }
    Some(Value::relation(tuples))
}

static REGISTRY: [BridgeTemplate; 1] = [BridgeTemplate {
    name: "function-of-sets to relation",
    from: Shape::FunctionOfSets,
    to: Shape::BinaryRelation,
    constraint: function_of_sets_constraint,
    convert: function_of_sets_convert,
}];

pub fn registry() -> &'static [BridgeTemplate] {
    &REGISTRY
}

fn expand<'a>(d: &'a Domain, spec: &'a Specification) -> Option<&'a Domain> {
    let mut d = d;
    let mut hops = 0;
    while let Domain::Named(n) = d {
        let decl = spec.declaration(n).filter(|x| x.kind == DeclKind::LettingDomain)?;
        d = decl.domain()?;
        hops += 1;
        if hops > spec.declarations.len() {
            return None;
        }
    }
    Some(d)
}

pub fn shape_of(d: &Domain, spec: &Specification) -> Option<Shape> {
    Some(match expand(d, spec)? {
        Domain::IntRange { .. } | Domain::IntUnbounded => Shape::Int,
        Domain::Set { .. } => Shape::Set,
        Domain::Tuple(_) => Shape::Tuple,
        Domain::Relation { components, .. } if components.len() == 2 => Shape::BinaryRelation,
        Domain::Relation { .. } => Shape::Relation,
        Domain::Function { to, .. } => match expand(to, spec)? {
            Domain::Set { .. } => Shape::FunctionOfSets,
            _ => Shape::Function,
        },
        Domain::Named(_) => unreachable!(),
    })
}

fn only_find(spec: &Specification, which: &str) -> Result<Declaration, ConvertError> {
    let finds: Vec<_> = spec.finds().collect();
    match finds.as_slice() {
        [f] => Ok((*f).clone()),
        _ => Err(ConvertError::Unsupported(format!("{which} specification has {} finds, expected 1", finds.len()))),
    }
}

fn template_for(original: &Specification, rewritten: &Specification) -> Result<&'static BridgeTemplate, ConvertError> {
    let of = only_find(original, "original")?;
    let rf = only_find(rewritten, "rewritten")?;
    if of.name != rf.name {
        return Err(ConvertError::Unsupported(format!("find names differ: `{}` vs `{}`", of.name, rf.name)));
    }
    if of.body == rf.body {
        return Err(ConvertError::NoConversionNeeded);
    }
    let to = shape_of(of.domain().unwrap(), original);
    let from = shape_of(rf.domain().unwrap(), rewritten);
    registry()
        .iter()
        .find(|t| Some(t.from) == from && Some(t.to) == to)
        .ok_or_else(|| ConvertError::Unsupported(format!("no bridge template from {from:?} to {to:?}")))
}

fn refs_domain(d: &Domain, out: &mut BTreeSet<String>) {
    for a in d.attrs() {
        if let Some(e) = &a.arg {
            refs_expr(e, &mut Vec::new(), out);
        }
    }
    match d {
        Domain::IntRange { lo, hi } => {
            for e in lo.iter().chain(hi.iter()) {
                refs_expr(e, &mut Vec::new(), out);
            }
        }
        Domain::IntUnbounded => {}
        Domain::Named(n) => {
            out.insert(n.clone());
        }
        Domain::Relation { components, .. } | Domain::Tuple(components) => {
            components.iter().for_each(|c| refs_domain(c, out));
        }
        Domain::Set { element, .. } => refs_domain(element, out),
        Domain::Function { from, to, .. } => {
            refs_domain(from, out);
            refs_domain(to, out);
        }
    }
}

fn refs_expr<'a>(e: &'a Expr, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
    match e {
        Expr::Int(_) | Expr::EmptySet => {}
        Expr::Ident(n) => {
            if !bound.contains(&n.as_str()) {
                out.insert(n.clone());
            }
        }
        Expr::Tuple(xs) => xs.iter().for_each(|x| refs_expr(x, bound, out)),
        Expr::BinOp { lhs, rhs, .. } => {
            refs_expr(lhs, bound, out);
            refs_expr(rhs, bound, out);
        }
        Expr::Not(x) | Expr::ToInt(x) | Expr::Defined(x) | Expr::TupleIndex { tuple: x, .. } => refs_expr(x, bound, out),
        Expr::Apply { func, args } => {
            if !bound.contains(&func.as_str()) {
                out.insert(func.clone());
            }
            args.iter().for_each(|x| refs_expr(x, bound, out));
        }
        Expr::Quant { binder, source, body, .. } => {
            match source {
                QuantSource::Domain(d) => refs_domain(d, out),
                QuantSource::Expr(x) => refs_expr(x, bound, out),
            }
            let mark = bound.len();
            bound.extend(binder.names());
            refs_expr(body, bound, out);
            bound.truncate(mark);
        }
    }
}

fn decl_refs(d: &Declaration) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    match &d.body {
        DeclBody::Domain(x) => refs_domain(x, &mut out),
        DeclBody::Value(x) => refs_expr(x, &mut Vec::new(), &mut out),
    }
    out
}

fn fresh(base: &str, taken: &HashSet<String>) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..).map(|i| format!("{base}{i}")).find(|n| !taken.contains(n)).unwrap()
}

/// Builds the converter specification: the needed givens and lettings
/// (givens first where dependencies allow), `given solution` typed by the
/// rewritten find's domain, the original find, and one bridging constraint.
///
/// Declarations are taken from the rewritten specification when both
/// define a name, since its solutions are what the converter consumes.
pub fn generate_converter(original: &Specification, rewritten: &Specification) -> Result<Specification, ConvertError> {
    let template = template_for(original, rewritten)?;
    let of = only_find(original, "original")?;
    let rf = only_find(rewritten, "rewritten")?;

    let mut taken: HashSet<String> = original.declarations.iter().map(|d| d.name.clone()).collect();
    taken.extend(rewritten.declarations.iter().map(|d| d.name.clone()));
    let solution = fresh("solution", &taken);
    taken.insert(solution.clone());
    let item = fresh("item", &taken);
    taken.insert(item.clone());
    let colour = fresh("colour", &taken);

    // Candidate declarations, original order first, then rewritten-only ones.
    let mut pool: Vec<Declaration> = Vec::new();
    for d in original.declarations.iter().filter(|d| d.kind != DeclKind::Find) {
        let chosen = rewritten.declaration(&d.name).filter(|r| r.kind == d.kind).unwrap_or(d);
        pool.push(chosen.clone());
    }
    for d in rewritten.declarations.iter().filter(|d| d.kind != DeclKind::Find) {
        match original.declaration(&d.name) {
            None => pool.push(d.clone()),
            Some(o) if o.kind != d.kind => {
                return Err(ConvertError::Unsupported(format!("`{}` is declared differently in the two specifications", d.name)))
            }
            Some(_) => {}
        }
    }

    // Keep only what the find and solution declarations transitively need.
    let mut needed: BTreeSet<String> = BTreeSet::new();
    let mut todo: Vec<String> = decl_refs(&of).into_iter().chain(decl_refs(&rf)).collect();
    while let Some(n) = todo.pop() {
        if let Some(d) = pool.iter().find(|d| d.name == n) {
            if needed.insert(n) {
                todo.extend(decl_refs(d));
            }
        }
    }
    let mut remaining: Vec<Declaration> = pool.into_iter().filter(|d| needed.contains(&d.name)).collect();
    let deps: Vec<(String, BTreeSet<String>)> =
        remaining.iter().map(|d| (d.name.clone(), decl_refs(d).intersection(&needed).cloned().collect())).collect();

    let mut placed: BTreeSet<String> = BTreeSet::new();
    let mut out = Specification::default();
    while !remaining.is_empty() {
        let ready = |d: &Declaration| deps.iter().find(|(n, _)| *n == d.name).unwrap().1.iter().all(|r| placed.contains(r));
        let idx = remaining
            .iter()
            .position(|d| d.kind == DeclKind::Given && ready(d))
            .or_else(|| remaining.iter().position(ready))
            .ok_or_else(|| ConvertError::Unsupported("cyclic declarations".into()))?;
        let d = remaining.remove(idx);
        placed.insert(d.name.clone());
        out.declarations.push(d);
    }
    out.declarations.push(Declaration::given(solution.clone(), rf.domain().unwrap().clone()));
    out.declarations.push(of.clone());
    out.constraints.push((template.constraint)(&of.name, &solution, &item, &colour));
    Ok(out)
}

/// Direct conversion of one rewritten solution value.
pub fn convert_solution(rewritten_solution: &Value, original_find_domain: &Domain, env: &Env) -> Result<Value, ConvertError> {
    let converted = registry()
        .iter()
        .find_map(|t| (t.convert)(rewritten_solution))
        .ok_or_else(|| ConvertError::DomainMismatch(format!("cannot convert a {}", rewritten_solution.kind_name())))?;
    let rd = resolve_domain(original_find_domain, env)?;
    if !contains(&rd, &converted) {
        return Err(ConvertError::DomainMismatch(format!(
            "{converted} is not in {}",
            crate::essence::print_domain(original_find_domain)
        )));
    }
    Ok(converted)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validation {
    Valid,
    /// Pretty-printed text of each failing constraint (or of the find
    /// declaration, when the candidate is outside its domain).
    Invalid(Vec<String>),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        *self == Validation::Valid
    }
}

/// Checks a candidate for the original specification's single find.
pub fn validate(original: &Specification, inst: &Instance, candidate: &Value) -> Result<Validation, ConvertError> {
    let find = only_find(original, "original")?;
    let env = Env::for_instance(original, inst, crate::eval::DEFAULT_MAX_GROUND)?;
    let rd = resolve_domain(find.domain().unwrap(), &env)?;
    let candidate = crate::eval::coerce_value(candidate, &rd);
    let mut failing = Vec::new();
    if !contains(&rd, &candidate) {
        failing.push(print_declaration(&find));
    }
    let mut ev = Evaluator::new(&env);
    ev.push(&find.name, candidate.clone());
    for (i, c) in original.constraints.iter().enumerate() {
        let v = ev.eval(c).map_err(|e| e.context(format!("constraint #{}", i + 1)))?;
        if v == Value::Int(0) {
            failing.push(print_expr(c));
        }
    }
    Ok(if failing.is_empty() { Validation::Valid } else { Validation::Invalid(failing) })
}
