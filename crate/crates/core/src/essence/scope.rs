//! Single-pass scope checking plus the light tuple-arity check needed for
//! `e[i]` indexing.

use std::collections::HashMap;

use super::ast::*;
use super::ScopeError;

/// Static shape of a value, as far as arity checking needs it.
#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Int,
    Tuple(Vec<Shape>),
    Set(Box<Shape>),
    Relation(Vec<Shape>),
    Function(Box<Shape>, Box<Shape>),
    Unknown,
}

#[derive(Debug, Clone)]
enum Entry {
    Domain(Shape),
    Value(Shape),
}

struct Checker<'a> {
    globals: HashMap<&'a str, Entry>,
    locals: Vec<(String, Shape)>,
    context: String,
}

pub fn check(spec: &Specification) -> Result<(), ScopeError> {
    let mut ck = Checker { globals: HashMap::new(), locals: Vec::new(), context: String::new() };
    for decl in &spec.declarations {
        ck.context = format!("declaration of `{}`", decl.name);
        if ck.globals.contains_key(decl.name.as_str()) {
            return Err(ck.err(format!("`{}` is declared more than once", decl.name)));
        }
        let entry = match &decl.body {
            DeclBody::Domain(d) => {
                let shape = ck.domain(d)?;
                if decl.kind == DeclKind::LettingDomain {
                    Entry::Domain(shape)
                } else {
                    Entry::Value(shape)
                }
            }
            DeclBody::Value(e) => Entry::Value(ck.expr(e)?),
        };
        ck.globals.insert(decl.name.as_str(), entry);
    }
    for (i, c) in spec.constraints.iter().enumerate() {
        ck.context = format!("constraint #{}", i + 1);
        ck.expr(c)?;
    }
    Ok(())
}

impl<'a> Checker<'a> {
    fn err(&self, message: String) -> ScopeError {
        ScopeError { context: self.context.clone(), message }
    }

    fn domain(&mut self, d: &Domain) -> Result<Shape, ScopeError> {
        for a in d.attrs() {
            if let Some(arg) = &a.arg {
                self.expr(arg)?;
            }
        }
        Ok(match d {
            Domain::IntUnbounded => Shape::Int,
            Domain::IntRange { lo, hi } => {
                for e in lo.iter().chain(hi.iter()) {
                    self.expr(e)?;
                }
                Shape::Int
            }
            Domain::Named(n) => match self.globals.get(n.as_str()) {
                Some(Entry::Domain(s)) => s.clone(),
                Some(Entry::Value(_)) => {
                    return Err(self.err(format!("`{n}` is a value, not a domain")));
                }
                None => return Err(self.err(format!("domain `{n}` is used before it is declared"))),
            },
            Domain::Relation { components, .. } => {
                Shape::Relation(components.iter().map(|c| self.domain(c)).collect::<Result<_, _>>()?)
            }
            Domain::Set { element, .. } => Shape::Set(Box::new(self.domain(element)?)),
            Domain::Function { from, to, .. } => {
                Shape::Function(Box::new(self.domain(from)?), Box::new(self.domain(to)?))
            }
            Domain::Tuple(comps) => {
                Shape::Tuple(comps.iter().map(|c| self.domain(c)).collect::<Result<_, _>>()?)
            }
        })
    }

    fn lookup(&self, name: &str) -> Result<Shape, ScopeError> {
        if let Some((_, s)) = self.locals.iter().rev().find(|(n, _)| n == name) {
            return Ok(s.clone());
        }
        match self.globals.get(name) {
            Some(Entry::Value(s)) => Ok(s.clone()),
            Some(Entry::Domain(_)) => Err(self.err(format!("`{name}` is a domain, not a value"))),
            None => Err(self.err(format!("`{name}` is used before it is declared"))),
        }
    }

    fn expr(&mut self, e: &Expr) -> Result<Shape, ScopeError> {
        Ok(match e {
            Expr::Int(_) => Shape::Int,
            Expr::Ident(n) => self.lookup(n)?,
            Expr::Tuple(elems) => Shape::Tuple(elems.iter().map(|x| self.expr(x)).collect::<Result<_, _>>()?),
            Expr::EmptySet => Shape::Set(Box::new(Shape::Unknown)),
            Expr::BinOp { op, lhs, rhs } => {
                let l = self.expr(lhs)?;
                self.expr(rhs)?;
                match op {
                    BinOp::Intersect => l,
                    _ => Shape::Int,
                }
            }
            Expr::Not(x) | Expr::ToInt(x) => {
                self.expr(x)?;
                Shape::Int
            }
            Expr::TupleIndex { tuple, index } => match self.expr(tuple)? {
                Shape::Tuple(comps) => match comps.get(*index as usize - 1) {
                    Some(s) => s.clone(),
                    None => {
                        return Err(self.err(format!(
                            "tuple index {index} is out of range for a {}-tuple",
                            comps.len()
                        )))
                    }
                },
                _ => Shape::Unknown,
            },
            Expr::Apply { func, args } => {
                let f = self.lookup(func)?;
                for a in args {
                    self.expr(a)?;
                }
                match f {
                    Shape::Function(_, to) => *to,
                    Shape::Relation(_) => Shape::Int,
                    _ => Shape::Unknown,
                }
            }
            Expr::Defined(x) => match self.expr(x)? {
                Shape::Function(from, _) => Shape::Set(from),
                _ => Shape::Set(Box::new(Shape::Unknown)),
            },
            Expr::Quant { binder, source, body, .. } => {
                let elem = match source {
                    QuantSource::Domain(d) => self.domain(d)?,
                    QuantSource::Expr(src) => match self.expr(src)? {
                        Shape::Set(t) => *t,
                        Shape::Relation(ts) => Shape::Tuple(ts),
                        _ => Shape::Unknown,
                    },
                };
                let mark = self.locals.len();
                match binder {
                    Binder::Name(n) => self.locals.push((n.clone(), elem)),
                    Binder::Tuple(names) => {
                        let comps = match elem {
                            Shape::Tuple(c) if c.len() == names.len() => c,
                            Shape::Tuple(c) => {
                                return Err(self.err(format!(
                                    "cannot destructure a {}-tuple into {} names",
                                    c.len(),
                                    names.len()
                                )))
                            }
                            _ => vec![Shape::Unknown; names.len()],
                        };
                        for (n, s) in names.iter().zip(comps) {
                            self.locals.push((n.clone(), s));
                        }
                    }
                }
                self.expr(body)?;
                self.locals.truncate(mark);
                Shape::Int
            }
        })
    }
}
