use std::collections::BTreeSet;
use std::sync::Arc;

use super::{ground, Env, EvalError};
use crate::essence::{print_expr, BinOp, Binder, Expr, QuantKind, QuantSource};
use crate::value::Value;

/// Evaluates expressions against an environment, keeping quantifier
/// bindings on a local stack.
pub struct Evaluator<'env, 'e> {
    env: &'env Env,
    locals: Vec<(&'e str, Value)>,
}

pub fn eval_expr(e: &Expr, env: &Env) -> Result<Value, EvalError> {
    Evaluator::new(env).eval(e)
}

fn truthy(v: &Value, e: &Expr) -> Result<bool, EvalError> {
    match v {
        Value::Int(i) => Ok(*i != 0),
        _ => Err(EvalError::TypeMismatch(format!("`{}` is a {}, expected a boolean", print_expr(e), v.kind_name()))),
    }
}

fn int(v: &Value, e: &Expr) -> Result<i64, EvalError> {
    v.as_int().ok_or_else(|| {
        EvalError::TypeMismatch(format!("`{}` is a {}, expected an integer", print_expr(e), v.kind_name()))
    })
}

/// Sets and relations with the same members are equal.
fn values_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Set(x) | Value::Relation(x), Value::Set(y) | Value::Relation(y)) => {
            x.len() == y.len() && x.iter().zip(y.iter()).all(|(p, q)| values_eq(p, q))
        }
        (Value::Tuple(x), Value::Tuple(y)) => x.len() == y.len() && x.iter().zip(y.iter()).all(|(p, q)| values_eq(p, q)),
        _ => a == b,
    }
}

impl<'env, 'e> Evaluator<'env, 'e> {
    pub fn new(env: &'env Env) -> Self {
        Evaluator { env, locals: Vec::new() }
    }

    /// Binds `name` for the rest of this evaluator's life, shadowing the
    /// environment.
    pub fn push(&mut self, name: &'e str, v: Value) {
        self.locals.push((name, v));
    }

    fn lookup(&self, name: &str) -> Result<&Value, EvalError> {
        if let Some((_, v)) = self.locals.iter().rev().find(|(n, _)| *n == name) {
            return Ok(v);
        }
        self.env.values.get(name).ok_or_else(|| EvalError::UnboundIdentifier(name.to_string()))
    }

    pub fn eval(&mut self, e: &'e Expr) -> Result<Value, EvalError> {
        Ok(match e {
            Expr::Int(i) => Value::Int(*i),
            Expr::Ident(n) => self.lookup(n)?.clone(),
            Expr::Tuple(xs) => Value::tuple(xs.iter().map(|x| self.eval(x)).collect::<Result<Vec<_>, _>>()?),
            Expr::EmptySet => Value::set([]),
            Expr::Not(x) => {
                let v = self.eval(x)?;
                Value::bool(!truthy(&v, x)?)
            }
            Expr::ToInt(x) => {
                let v = self.eval(x)?;
                Value::bool(truthy(&v, x)?)
            }
            Expr::BinOp { op, lhs, rhs } => self.binop(*op, lhs, rhs, e)?,
            Expr::TupleIndex { tuple, index } => match self.eval(tuple)? {
                Value::Tuple(xs) => {
                    let i = *index as usize;
                    if i == 0 || i > xs.len() {
                        return Err(EvalError::IndexOutOfArity { index: *index, arity: xs.len() });
                    }
                    xs[i - 1].clone()
                }
                v => {
                    return Err(EvalError::TypeMismatch(format!(
                        "`{}` is a {}, expected a tuple",
                        print_expr(tuple),
                        v.kind_name()
                    )))
                }
            },
            Expr::Apply { func, args } => {
                let mut vals = args.iter().map(|a| self.eval(a)).collect::<Result<Vec<_>, _>>()?;
                let key = if vals.len() == 1 { vals.pop().unwrap() } else { Value::tuple(vals) };
                match self.lookup(func)? {
                    Value::Function(m) => m
                        .get(&key)
                        .cloned()
                        .ok_or_else(|| EvalError::PartialApplication(format!("{func}({key})")))?,
                    Value::Relation(s) => {
                        let key = match key {
                            Value::Tuple(_) => key,
                            k => Value::tuple([k]),
                        };
                        Value::bool(s.contains(&key))
                    }
                    v => {
                        return Err(EvalError::TypeMismatch(format!("`{func}` is a {}, not applicable", v.kind_name())))
                    }
                }
            }
            Expr::Defined(x) => match self.eval(x)? {
                Value::Function(m) => Value::set(m.keys().cloned()),
                v => {
                    return Err(EvalError::TypeMismatch(format!(
                        "`{}` is a {}, expected a function",
                        print_expr(x),
                        v.kind_name()
                    )))
                }
            },
            Expr::Quant { kind, binder, source, body } => self.quant(*kind, binder, source, body)?,
        })
    }

    fn binop(&mut self, op: BinOp, lhs: &'e Expr, rhs: &'e Expr, whole: &Expr) -> Result<Value, EvalError> {
        let l = self.eval(lhs)?;
        match op {
            BinOp::And => {
                if !truthy(&l, lhs)? {
                    return Ok(Value::bool(false));
                }
                let r = self.eval(rhs)?;
                return Ok(Value::bool(truthy(&r, rhs)?));
            }
            BinOp::Implies => {
                if !truthy(&l, lhs)? {
                    return Ok(Value::bool(true));
                }
                let r = self.eval(rhs)?;
                return Ok(Value::bool(truthy(&r, rhs)?));
            }
            _ => {}
        }
        let r = self.eval(rhs)?;
        let overflow = || EvalError::Overflow(print_expr(whole));
        Ok(match op {
            BinOp::Add => Value::Int(int(&l, lhs)?.checked_add(int(&r, rhs)?).ok_or_else(overflow)?),
            BinOp::Sub => Value::Int(int(&l, lhs)?.checked_sub(int(&r, rhs)?).ok_or_else(overflow)?),
            BinOp::Mul => Value::Int(int(&l, lhs)?.checked_mul(int(&r, rhs)?).ok_or_else(overflow)?),
            BinOp::Eq => Value::bool(values_eq(&l, &r)),
            BinOp::Neq => Value::bool(!values_eq(&l, &r)),
            BinOp::In => match &r {
                Value::Set(s) | Value::Relation(s) => Value::bool(s.contains(&l)),
                Value::Function(m) => Value::bool(match &l {
                    Value::Tuple(kv) if kv.len() == 2 => m.get(&kv[0]) == Some(&kv[1]),
                    _ => false,
                }),
                v => {
                    return Err(EvalError::TypeMismatch(format!(
                        "`{}` is a {}, expected a collection",
                        print_expr(rhs),
                        v.kind_name()
                    )))
                }
            },
            BinOp::Intersect => match (&l, &r) {
                (Value::Relation(a), Value::Relation(b)) => {
                    Value::Relation(Arc::new(a.intersection(b).cloned().collect::<BTreeSet<_>>()))
                }
                (Value::Set(a) | Value::Relation(a), Value::Set(b) | Value::Relation(b)) => {
                    Value::Set(Arc::new(a.intersection(b).cloned().collect()))
                }
                _ => {
                    return Err(EvalError::TypeMismatch(format!(
                        "intersect of {} and {} in `{}`",
                        l.kind_name(),
                        r.kind_name(),
                        print_expr(whole)
                    )))
                }
            },
            BinOp::And | BinOp::Implies => unreachable!(),
        })
    }

    fn bind(&mut self, binder: &'e Binder, v: Value) -> Result<(), EvalError> {
        match binder {
            Binder::Name(n) => self.locals.push((n, v)),
            Binder::Tuple(names) => match v {
                Value::Tuple(xs) if xs.len() == names.len() => {
                    for (n, x) in names.iter().zip(xs.iter()) {
                        self.locals.push((n, x.clone()));
                    }
                }
                v => {
                    return Err(EvalError::TypeMismatch(format!(
                        "cannot destructure {v} into ({})",
                        names.join(", ")
                    )))
                }
            },
        }
        Ok(())
    }

    fn quant(
        &mut self,
        kind: QuantKind,
        binder: &'e Binder,
        source: &'e QuantSource,
        body: &'e Expr,
    ) -> Result<Value, EvalError> {
        let items: Vec<Value> = match source {
            QuantSource::Domain(d) => ground(d, self.env)?.iter().collect(),
            QuantSource::Expr(src) => match self.eval(src)? {
                Value::Set(s) | Value::Relation(s) => s.iter().cloned().collect(),
                Value::Function(m) => m.iter().map(|(k, v)| Value::pair(k.clone(), v.clone())).collect(),
                v => {
                    return Err(EvalError::TypeMismatch(format!(
                        "`{}` is a {}, cannot quantify over it",
                        print_expr(src),
                        v.kind_name()
                    )))
                }
            },
        };
        let mark = self.locals.len();
        let mut acc: i64 = 0;
        for item in items {
            self.bind(binder, item)?;
            let r = self.eval(body);
            self.locals.truncate(mark);
            let r = r?;
            match kind {
                QuantKind::ForAll => {
                    if !truthy(&r, body)? {
                        return Ok(Value::bool(false));
                    }
                }
                QuantKind::Sum => {
                    acc = acc.checked_add(int(&r, body)?).ok_or_else(|| EvalError::Overflow("sum".into()))?;
                }
            }
        }
        Ok(match kind {
            QuantKind::ForAll => Value::bool(true),
            QuantKind::Sum => Value::Int(acc),
        })
    }
}
