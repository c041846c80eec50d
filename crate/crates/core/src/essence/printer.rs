//! Deterministic pretty printer. Output re-parses to a structurally equal
//! specification.

use super::ast::*;

pub fn print_spec(spec: &Specification) -> String {
    let mut out = String::new();
    let comments_at = |anchor: CommentAnchor, out: &mut String| {
        for c in spec.comments.iter().filter(|c| c.anchor == anchor) {
            out.push_str("$ ");
            out.push_str(&c.text);
            out.push('\n');
        }
    };
    for (i, decl) in spec.declarations.iter().enumerate() {
        comments_at(CommentAnchor::Declaration(i), &mut out);
        out.push_str(&print_declaration(decl));
        out.push('\n');
    }
    if !spec.constraints.is_empty() {
        out.push_str("such that\n");
        for (i, c) in spec.constraints.iter().enumerate() {
            comments_at(CommentAnchor::Constraint(i), &mut out);
            out.push_str(&print_expr(c));
            if i + 1 < spec.constraints.len() {
                out.push(',');
            }
            out.push('\n');
        }
    }
    // Anchors past the end (e.g. after a constraint was removed) print last.
    for c in &spec.comments {
        let dangling = match c.anchor {
            CommentAnchor::Declaration(i) => i >= spec.declarations.len(),
            CommentAnchor::Constraint(i) => i >= spec.constraints.len(),
            CommentAnchor::End => true,
        };
        if dangling {
            out.push_str("$ ");
            out.push_str(&c.text);
            out.push('\n');
        }
    }
    out
}

pub fn print_declaration(decl: &Declaration) -> String {
    match (&decl.kind, &decl.body) {
        (DeclKind::LettingDomain, DeclBody::Domain(d)) => {
            format!("letting {} be domain {}", decl.name, print_domain(d))
        }
        (DeclKind::LettingValue, DeclBody::Value(e)) => {
            format!("letting {} be {}", decl.name, print_expr(e))
        }
        (kind, DeclBody::Domain(d)) => format!("{} {} : {}", kind.keyword(), decl.name, print_domain(d)),
        (kind, DeclBody::Value(e)) => format!("{} {} = {}", kind.keyword(), decl.name, print_expr(e)),
    }
}

pub fn print_domain(d: &Domain) -> String {
    match d {
        Domain::IntUnbounded => "int".to_string(),
        Domain::IntRange { lo, hi } => format!(
            "int({}..{})",
            lo.as_deref().map(print_expr).unwrap_or_default(),
            hi.as_deref().map(print_expr).unwrap_or_default()
        ),
        Domain::Named(n) => n.clone(),
        Domain::Relation { attrs, components } => format!(
            "relation {}of ({})",
            print_attrs(attrs),
            components.iter().map(print_domain).collect::<Vec<_>>().join(" * ")
        ),
        Domain::Set { attrs, element } => format!("set {}of {}", print_attrs(attrs), print_domain(element)),
        Domain::Function { attrs, from, to } => format!(
            "function {}{} --> {}",
            print_attrs(attrs),
            print_domain(from),
            print_domain(to)
        ),
        Domain::Tuple(comps) => format!(
            "tuple ({})",
            comps.iter().map(print_domain).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn print_attrs(attrs: &[Attribute]) -> String {
    if attrs.is_empty() {
        return String::new();
    }
    let parts: Vec<String> = attrs
        .iter()
        .map(|a| match &a.arg {
            Some(e) => format!("{} {}", a.name.as_str(), print_expr(e)),
            None => a.name.as_str().to_string(),
        })
        .collect();
    format!("({}) ", parts.join(", "))
}

pub fn print_expr(e: &Expr) -> String {
    match e {
        Expr::Int(v) => v.to_string(),
        Expr::Ident(n) => n.clone(),
        Expr::Tuple(elems) => format!("({})", elems.iter().map(print_expr).collect::<Vec<_>>().join(", ")),
        Expr::EmptySet => "{}".to_string(),
        Expr::BinOp { op, lhs, rhs } => {
            let prec = op.precedence();
            let left_paren = lhs.precedence() < prec
                || (lhs.precedence() == prec && op.assoc() != Assoc::Left);
            let right_paren = rhs.precedence() < prec
                || (rhs.precedence() == prec && op.assoc() != Assoc::Right);
            format!("{} {} {}", wrap(lhs, left_paren), op.glyph(), wrap(rhs, right_paren))
        }
        Expr::Not(inner) => format!("!{}", wrap(inner, inner.precedence() < 7)),
        Expr::TupleIndex { tuple, index } => format!("{}[{}]", wrap(tuple, tuple.precedence() < 8), index),
        Expr::Apply { func, args } => {
            format!("{}({})", func, args.iter().map(print_expr).collect::<Vec<_>>().join(", "))
        }
        Expr::Quant { kind, binder, source, body } => {
            let b = match binder {
                Binder::Name(n) => n.clone(),
                Binder::Tuple(ns) => format!("({})", ns.join(", ")),
            };
            let src = match source {
                QuantSource::Domain(d) => format!(": {}", print_domain(d)),
                QuantSource::Expr(e) => {
                    format!("in {}", wrap(e, e.precedence() <= BinOp::In.precedence()))
                }
            };
            format!("{} {} {} . {}", kind.keyword(), b, src, print_expr(body))
        }
        Expr::ToInt(inner) => format!("toInt({})", print_expr(inner)),
        Expr::Defined(inner) => format!("defined({})", print_expr(inner)),
    }
}

fn wrap(e: &Expr, paren: bool) -> String {
    if paren {
        format!("({})", print_expr(e))
    } else {
        print_expr(e)
    }
}
