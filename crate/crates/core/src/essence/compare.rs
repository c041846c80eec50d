//! Structural comparison of specifications, optionally up to renaming of
//! quantifier binders.

use super::ast::*;

/// Equality after discarding comments. Identifier names are significant;
/// with `alpha` set, quantifier binders may differ by a consistent renaming.
pub fn struct_eq(a: &Specification, b: &Specification, alpha: bool) -> bool {
    if !alpha {
        return a.declarations == b.declarations && a.constraints == b.constraints;
    }
    a.declarations.len() == b.declarations.len()
        && a.constraints.len() == b.constraints.len()
        && a.declarations.iter().zip(&b.declarations).all(|(x, y)| decl_alpha_eq(x, y))
        && a.constraints.iter().zip(&b.constraints).all(|(x, y)| expr_alpha_eq(x, y))
}

pub fn decl_alpha_eq(a: &Declaration, b: &Declaration) -> bool {
    a.kind == b.kind
        && a.name == b.name
        && match (&a.body, &b.body) {
            (DeclBody::Domain(x), DeclBody::Domain(y)) => domain_eq(x, y, &mut Vec::new()),
            (DeclBody::Value(x), DeclBody::Value(y)) => expr_eq(x, y, &mut Vec::new()),
            _ => false,
        }
}

pub fn expr_alpha_eq(a: &Expr, b: &Expr) -> bool {
    expr_eq(a, b, &mut Vec::new())
}

type Renaming = Vec<(String, String)>;

fn names_eq(a: &str, b: &str, env: &Renaming) -> bool {
    // Innermost binding wins; a name bound on one side only never matches.
    for (x, y) in env.iter().rev() {
        if x == a || y == b {
            return x == a && y == b;
        }
    }
    a == b
}

fn attrs_eq(a: &[Attribute], b: &[Attribute], env: &mut Renaming) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| {
            x.name == y.name
                && match (&x.arg, &y.arg) {
                    (Some(p), Some(q)) => expr_eq(p, q, env),
                    (None, None) => true,
                    _ => false,
                }
        })
}

fn opt_eq(a: &Option<Box<Expr>>, b: &Option<Box<Expr>>, env: &mut Renaming) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => expr_eq(x, y, env),
        (None, None) => true,
        _ => false,
    }
}

fn domain_eq(a: &Domain, b: &Domain, env: &mut Renaming) -> bool {
    match (a, b) {
        (Domain::IntUnbounded, Domain::IntUnbounded) => true,
        (Domain::IntRange { lo: l1, hi: h1 }, Domain::IntRange { lo: l2, hi: h2 }) => {
            opt_eq(l1, l2, env) && opt_eq(h1, h2, env)
        }
        (Domain::Named(x), Domain::Named(y)) => x == y,
        (
            Domain::Relation { attrs: a1, components: c1 },
            Domain::Relation { attrs: a2, components: c2 },
        ) => {
            attrs_eq(a1, a2, env)
                && c1.len() == c2.len()
                && c1.iter().zip(c2).all(|(x, y)| domain_eq(x, y, env))
        }
        (Domain::Set { attrs: a1, element: e1 }, Domain::Set { attrs: a2, element: e2 }) => {
            attrs_eq(a1, a2, env) && domain_eq(e1, e2, env)
        }
        (
            Domain::Function { attrs: a1, from: f1, to: t1 },
            Domain::Function { attrs: a2, from: f2, to: t2 },
        ) => attrs_eq(a1, a2, env) && domain_eq(f1, f2, env) && domain_eq(t1, t2, env),
        (Domain::Tuple(c1), Domain::Tuple(c2)) => {
            c1.len() == c2.len() && c1.iter().zip(c2).all(|(x, y)| domain_eq(x, y, env))
        }
        _ => false,
    }
}

fn expr_eq(a: &Expr, b: &Expr, env: &mut Renaming) -> bool {
    match (a, b) {
        (Expr::Int(x), Expr::Int(y)) => x == y,
        (Expr::Ident(x), Expr::Ident(y)) => names_eq(x, y, env),
        (Expr::Tuple(x), Expr::Tuple(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(p, q)| expr_eq(p, q, env))
        }
        (Expr::EmptySet, Expr::EmptySet) => true,
        (Expr::BinOp { op: o1, lhs: l1, rhs: r1 }, Expr::BinOp { op: o2, lhs: l2, rhs: r2 }) => {
            o1 == o2 && expr_eq(l1, l2, env) && expr_eq(r1, r2, env)
        }
        (Expr::Not(x), Expr::Not(y)) | (Expr::ToInt(x), Expr::ToInt(y)) | (Expr::Defined(x), Expr::Defined(y)) => {
            expr_eq(x, y, env)
        }
        (Expr::TupleIndex { tuple: t1, index: i1 }, Expr::TupleIndex { tuple: t2, index: i2 }) => {
            i1 == i2 && expr_eq(t1, t2, env)
        }
        (Expr::Apply { func: f1, args: a1 }, Expr::Apply { func: f2, args: a2 }) => {
            names_eq(f1, f2, env)
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(p, q)| expr_eq(p, q, env))
        }
        (
            Expr::Quant { kind: k1, binder: b1, source: s1, body: x1 },
            Expr::Quant { kind: k2, binder: b2, source: s2, body: x2 },
        ) => {
            if k1 != k2 {
                return false;
            }
            let sources = match (s1, s2) {
                (QuantSource::Domain(d1), QuantSource::Domain(d2)) => domain_eq(d1, d2, env),
                (QuantSource::Expr(e1), QuantSource::Expr(e2)) => expr_eq(e1, e2, env),
                _ => false,
            };
            if !sources {
                return false;
            }
            let (n1, n2) = (b1.names(), b2.names());
            let same_shape = matches!((b1, b2), (Binder::Name(_), Binder::Name(_)))
                || matches!((b1, b2), (Binder::Tuple(_), Binder::Tuple(_)));
            if !same_shape || n1.len() != n2.len() {
                return false;
            }
            let mark = env.len();
            env.extend(n1.iter().zip(&n2).map(|(x, y)| (x.to_string(), y.to_string())));
            let ok = expr_eq(x1, x2, env);
            env.truncate(mark);
            ok
        }
        _ => false,
    }
}
