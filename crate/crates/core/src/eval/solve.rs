use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;

use super::{resolve_domain, DEFAULT_MAX_GROUND, Env, EvalError, Evaluator, Instance};
use crate::essence::{print_expr, Specification};
use crate::value::Value;

/// Find name → value.
pub type Solution = BTreeMap<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Stop after this many solutions.
    pub limit: Option<usize>,
    /// Refuse when the candidate count exceeds this.
    pub max_ground: u128,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { limit: None, max_ground: DEFAULT_MAX_GROUND }
    }
}

const CHUNK: usize = 2048;

/// True iff every constraint holds with the finds bound to `assignment`.
pub fn check_constraints(spec: &Specification, env: &Env, assignment: &Solution) -> Result<bool, EvalError> {
    let mut ev = Evaluator::new(env);
    for (k, v) in assignment {
        ev.push(k, v.clone());
    }
    for (i, c) in spec.constraints.iter().enumerate() {
        let v = ev.eval(c).map_err(|e| e.context(format!("constraint #{}", i + 1)))?;
        match v {
            Value::Int(0) => return Ok(false),
            Value::Int(_) => {}
            v => {
                return Err(EvalError::TypeMismatch(format!(
                    "constraint `{}` evaluated to a {}",
                    print_expr(c),
                    v.kind_name()
                )))
            }
        }
    }
    Ok(true)
}

pub fn solve(spec: &Specification, inst: &Instance, limit: Option<usize>) -> Result<Vec<Solution>, EvalError> {
    solve_with(spec, inst, SolveOptions { limit, ..Default::default() })
}

/// Enumerates every assignment to the finds in canonical order and keeps
/// those satisfying all constraints. Candidates are checked in parallel
/// chunks; the result order does not depend on scheduling.
pub fn solve_with(spec: &Specification, inst: &Instance, opts: SolveOptions) -> Result<Vec<Solution>, EvalError> {
    let env = Env::for_instance(spec, inst, opts.max_ground)?;
    let finds: Vec<_> = spec.finds().collect();
    if finds.is_empty() {
        return Err(EvalError::NoFind);
    }
    let mut domains = Vec::with_capacity(finds.len());
    let mut total: u128 = 1;
    for f in &finds {
        let d = f.domain().expect("find declares a domain");
        let rd = resolve_domain(d, &env).map_err(|e| e.context(format!("declaration of `{}`", f.name)))?;
        let n = super::cardinality(&rd).map_err(|e| match e {
            EvalError::TooLarge { count, .. } => EvalError::TooLarge { count, cap: opts.max_ground },
            e => e,
        })?;
        total = total.saturating_mul(n);
        domains.push(rd);
    }
    if total > opts.max_ground {
        let count = if total == u128::MAX { "more than 2^128".to_string() } else { total.to_string() };
        return Err(EvalError::TooLarge { count, cap: opts.max_ground });
    }
    let grounds = domains.iter().map(|d| d.ground(opts.max_ground)).collect::<Result<Vec<_>, _>>()?;
    // All but the first find are materialised; the first streams.
    let rest: Vec<Vec<Value>> = grounds[1..].iter().map(|g| g.iter().collect()).collect();
    let names: Vec<&str> = finds.iter().map(|f| f.name.as_str()).collect();
    let candidates = grounds[0].iter().flat_map(|first| {
        let tails: Box<dyn Iterator<Item = Vec<Value>> + Send> = if rest.is_empty() {
            Box::new(std::iter::once(Vec::new()))
        } else {
            Box::new(rest.iter().map(|r| r.iter().cloned()).multi_cartesian_product())
        };
        tails.map(move |mut tail| {
            tail.insert(0, first.clone());
            tail
        })
    });

    let limit = opts.limit.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    if limit == 0 {
        return Ok(out);
    }
    for chunk in &candidates.chunks(CHUNK) {
        let chunk: Vec<Solution> = chunk
            .map(|vals| names.iter().map(|n| n.to_string()).zip(vals).collect())
            .collect();
        let verdicts: Vec<Result<bool, EvalError>> =
            chunk.par_iter().map(|a| check_constraints(spec, &env, a)).collect();
        for (a, ok) in chunk.into_iter().zip(verdicts) {
            if ok? {
                out.push(a);
                if out.len() >= limit {
                    return Ok(out);
                }
            }
        }
    }
    Ok(out)
}
