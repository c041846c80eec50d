//! Recursive-descent parser for the Essence subset.

use super::ast::*;
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;

/// Constructs from full Essence that this subset recognises only in order to
/// reject them with a useful message.
const UNSUPPORTED_DOMAINS: &[&str] = &["mset", "partition", "matrix", "sequence", "bool"];
const UNSUPPORTED_TOPLEVEL: &[&str] =
    &["minimising", "maximising", "branching", "heuristic", "language", "where", "dominance"];
const UNSUPPORTED_EXPRS: &[&str] =
    &["exists", "product", "allDiff", "min", "max", "true", "false", "image", "preImage"];

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
    pending_comments: Vec<String>,
}

impl Parser {
    pub(crate) fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text)?, pos: 0, pending_comments: Vec::new() })
    }

    pub(super) fn skip_comments(&mut self) {
        while let Tok::Comment(c) = &self.toks[self.pos].tok {
            self.pending_comments.push(c.clone());
            self.pos += 1;
        }
    }

    pub(super) fn peek(&mut self) -> &Tok {
        self.skip_comments();
        &self.toks[self.pos].tok
    }

    pub(super) fn peek_at(&mut self, ahead: usize) -> &Tok {
        self.skip_comments();
        let mut idx = self.pos;
        let mut seen = 0;
        while seen < ahead {
            idx += 1;
            if idx >= self.toks.len() {
                return &Tok::Eof;
            }
            if !matches!(self.toks[idx].tok, Tok::Comment(_)) {
                seen += 1;
            }
        }
        &self.toks[idx.min(self.toks.len() - 1)].tok
    }

    pub(super) fn here(&mut self) -> (usize, usize) {
        self.skip_comments();
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    pub(super) fn bump(&mut self) -> Tok {
        self.skip_comments();
        let t = self.toks[self.pos].tok.clone();
        if !matches!(t, Tok::Eof) {
            self.pos += 1;
        }
        t
    }

    pub(super) fn error(&mut self, message: impl Into<String>, expected: &[&str]) -> ParseError {
        let (line, col) = self.here();
        let found = self.toks[self.pos].tok.describe();
        let mut e = ParseError::new(line, col, format!("{}, found {}", message.into(), found));
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        e
    }

    pub(super) fn is_sym(&mut self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(x) if *x == s)
    }

    pub(super) fn is_word(&mut self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    pub(super) fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(super) fn expect_sym(&mut self, s: &'static str) -> Result<(), ParseError> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`"), &[s]))
        }
    }

    pub(super) fn expect_word(&mut self, w: &'static str) -> Result<(), ParseError> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{w}`"), &[w]))
        }
    }

    pub(super) fn expect_ident(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) if !is_keyword(&name) => {
                self.bump();
                Ok(name)
            }
            _ => Err(self.error("expected an identifier", &["identifier"])),
        }
    }

    pub(super) fn expect_int(&mut self) -> Result<i64, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.error("expected an integer literal", &["integer"])),
        }
    }

    pub(super) fn take_comments(&mut self, anchor: CommentAnchor, into: &mut Vec<Comment>) {
        for text in self.pending_comments.drain(..) {
            into.push(Comment { anchor, text });
        }
    }

    pub(crate) fn at_eof(&mut self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub(crate) fn parse_spec(&mut self) -> Result<Specification, ParseError> {
        let mut spec = Specification::default();
        loop {
            let word = match self.peek().clone() {
                Tok::Eof => break,
                Tok::Ident(w) => w,
                _ => return Err(self.error("expected a declaration or `such that`", TOP_EXPECTED)),
            };
            match word.as_str() {
                "given" | "find" => {
                    self.take_comments(
                        CommentAnchor::Declaration(spec.declarations.len()),
                        &mut spec.comments,
                    );
                    self.bump();
                    let kind = if word == "given" { DeclKind::Given } else { DeclKind::Find };
                    let mut names = vec![self.expect_ident()?];
                    while self.eat_sym(",") {
                        names.push(self.expect_ident()?);
                    }
                    self.expect_sym(":")?;
                    let domain = self.parse_domain()?;
                    for name in names {
                        spec.declarations.push(Declaration {
                            kind,
                            name,
                            body: DeclBody::Domain(domain.clone()),
                        });
                    }
                }
                "letting" => {
                    self.take_comments(
                        CommentAnchor::Declaration(spec.declarations.len()),
                        &mut spec.comments,
                    );
                    self.bump();
                    let name = self.expect_ident()?;
                    self.expect_word("be")?;
                    if self.is_word("domain") {
                        self.bump();
                        let domain = self.parse_domain()?;
                        spec.declarations.push(Declaration::letting_domain(name, domain));
                    } else {
                        let value = self.parse_expr()?;
                        spec.declarations.push(Declaration::letting_value(name, value));
                    }
                }
                "such" => {
                    self.bump();
                    self.expect_word("that")?;
                    loop {
                        self.skip_comments();
                        self.take_comments(
                            CommentAnchor::Constraint(spec.constraints.len()),
                            &mut spec.comments,
                        );
                        let e = self.parse_expr()?;
                        spec.constraints.push(e);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                }
                w if UNSUPPORTED_TOPLEVEL.contains(&w) => {
                    return Err(self.error(
                        format!("unsupported Essence construct `{w}` (outside the supported subset)"),
                        TOP_EXPECTED,
                    ));
                }
                _ => return Err(self.error("expected a declaration or `such that`", TOP_EXPECTED)),
            }
        }
        self.take_comments(CommentAnchor::End, &mut spec.comments);
        Ok(spec)
    }

    pub(crate) fn parse_domain(&mut self) -> Result<Domain, ParseError> {
        let word = match self.peek().clone() {
            Tok::Ident(w) => w,
            _ => return Err(self.error("expected a domain", DOMAIN_EXPECTED)),
        };
        match word.as_str() {
            "int" => {
                self.bump();
                if !self.eat_sym("(") {
                    return Ok(Domain::IntUnbounded);
                }
                let lo = if self.is_sym("..") { None } else { Some(self.parse_expr()?) };
                if !self.eat_sym("..") {
                    return Err(self.error(
                        "only integer ranges `int(lo..hi)` are supported",
                        &[".."],
                    ));
                }
                let hi = if self.is_sym(")") { None } else { Some(self.parse_expr()?) };
                self.expect_sym(")")?;
                Ok(Domain::int_range(lo, hi))
            }
            "relation" => {
                self.bump();
                let attrs = self.parse_attrs()?;
                self.expect_word("of")?;
                self.expect_sym("(")?;
                let mut components = vec![self.parse_domain()?];
                while self.eat_sym("*") {
                    components.push(self.parse_domain()?);
                }
                if components.len() != 2 {
                    return Err(self.error(
                        format!("only binary relations are supported (got {} components)", components.len()),
                        &[")"],
                    ));
                }
                self.expect_sym(")")?;
                Ok(Domain::Relation { attrs, components })
            }
            "set" => {
                self.bump();
                let attrs = self.parse_attrs()?;
                self.expect_word("of")?;
                let element = self.parse_domain()?;
                Ok(Domain::Set { attrs, element: Box::new(element) })
            }
            "function" => {
                self.bump();
                let attrs = self.parse_attrs()?;
                let from = self.parse_domain()?;
                self.expect_sym("-->")?;
                let to = self.parse_domain()?;
                Ok(Domain::Function { attrs, from: Box::new(from), to: Box::new(to) })
            }
            "tuple" => {
                self.bump();
                self.expect_sym("(")?;
                let mut comps = vec![self.parse_domain()?];
                while self.eat_sym(",") {
                    comps.push(self.parse_domain()?);
                }
                self.expect_sym(")")?;
                Ok(Domain::Tuple(comps))
            }
            w if UNSUPPORTED_DOMAINS.contains(&w) => Err(self.error(
                format!("unsupported domain `{w}` (outside the supported subset)"),
                DOMAIN_EXPECTED,
            )),
            _ => Ok(Domain::Named(self.expect_ident()?)),
        }
    }

    pub(super) fn parse_attrs(&mut self) -> Result<Vec<Attribute>, ParseError> {
        let mut attrs = Vec::new();
        let opens_attrs = self.is_sym("(")
            && matches!(self.peek_at(1), Tok::Ident(w) if AttrName::from_name(w).is_some() || is_attr_like(w));
        if !opens_attrs {
            return Ok(attrs);
        }
        self.bump();
        loop {
            let word = match self.peek().clone() {
                Tok::Ident(w) => w,
                _ => return Err(self.error("expected an attribute", ATTR_EXPECTED)),
            };
            let Some(name) = AttrName::from_name(&word) else {
                return Err(self.error(format!("unsupported attribute `{word}`"), ATTR_EXPECTED));
            };
            self.bump();
            let arg = if name.takes_arg() { Some(self.parse_expr()?) } else { None };
            attrs.push(Attribute { name, arg });
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(")")?;
        Ok(attrs)
    }

    pub(crate) fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        self.parse_binary(1)
    }

    pub(super) fn peek_binop(&mut self) -> Option<BinOp> {
        match self.peek() {
            Tok::Sym(s) => BinOp::from_glyph(s),
            Tok::Ident(w) if w == "in" || w == "intersect" => BinOp::from_glyph(w),
            _ => None,
        }
    }

    pub(super) fn parse_binary(&mut self, min_prec: u8) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        while let Some(op) = self.peek_binop() {
            let prec = op.precedence();
            if prec < min_prec {
                break;
            }
            self.bump();
            let next = if op.assoc() == Assoc::Right { prec } else { prec + 1 };
            let rhs = self.parse_binary(next)?;
            lhs = Expr::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    pub(super) fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat_sym("!") {
            return Ok(Expr::negate(self.parse_unary()?));
        }
        self.parse_postfix()
    }

    pub(super) fn parse_postfix(&mut self) -> Result<Expr, ParseError> {
        let mut e = self.parse_primary()?;
        loop {
            if self.is_sym("[") {
                self.bump();
                let index = self.expect_int()?;
                if index < 1 || index > u32::MAX as i64 {
                    return Err(self.error("tuple indices are 1-based", &["integer >= 1"]));
                }
                self.expect_sym("]")?;
                e = Expr::index(e, index as u32);
            } else if self.is_sym("(") && matches!(e, Expr::Ident(_)) {
                self.bump();
                let mut args = vec![self.parse_expr()?];
                while self.eat_sym(",") {
                    args.push(self.parse_expr()?);
                }
                self.expect_sym(")")?;
                let Expr::Ident(func) = e else { unreachable!() };
                e = Expr::Apply { func, args };
            } else {
                return Ok(e);
            }
        }
    }

    pub(super) fn parse_primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(Expr::Int(v))
            }
            Tok::Sym("(") => {
                self.bump();
                let first = self.parse_expr()?;
                if self.eat_sym(",") {
                    let mut elems = vec![first, self.parse_expr()?];
                    while self.eat_sym(",") {
                        elems.push(self.parse_expr()?);
                    }
                    self.expect_sym(")")?;
                    Ok(Expr::Tuple(elems))
                } else {
                    self.expect_sym(")")?;
                    Ok(first)
                }
            }
            Tok::Sym("{") => {
                self.bump();
                if self.eat_sym("}") {
                    Ok(Expr::EmptySet)
                } else {
                    Err(self.error("only the empty set literal `{}` is supported in expressions", &["}"]))
                }
            }
            Tok::Ident(w) => match w.as_str() {
                "forAll" | "sum" => {
                    self.bump();
                    let kind = if w == "forAll" { QuantKind::ForAll } else { QuantKind::Sum };
                    let binder = self.parse_binder()?;
                    let source = if self.eat_sym(":") {
                        QuantSource::Domain(self.parse_domain()?)
                    } else if self.is_word("in") {
                        self.bump();
                        QuantSource::Expr(Box::new(self.parse_binary(BinOp::In.precedence() + 1)?))
                    } else {
                        return Err(self.error("expected `:` or `in` after quantifier binder", &[":", "in"]));
                    };
                    self.expect_sym(".")?;
                    let body = self.parse_expr()?;
                    Ok(Expr::Quant { kind, binder, source, body: Box::new(body) })
                }
                "toInt" | "defined" => {
                    self.bump();
                    self.expect_sym("(")?;
                    let inner = self.parse_expr()?;
                    self.expect_sym(")")?;
                    Ok(if w == "toInt" {
                        Expr::ToInt(Box::new(inner))
                    } else {
                        Expr::Defined(Box::new(inner))
                    })
                }
                w if UNSUPPORTED_EXPRS.contains(&w) => Err(self.error(
                    format!("unsupported Essence construct `{w}` (outside the supported subset)"),
                    EXPR_EXPECTED,
                )),
                _ => Ok(Expr::Ident(self.expect_ident()?)),
            },
            _ => Err(self.error("expected an expression", EXPR_EXPECTED)),
        }
    }

    pub(super) fn parse_binder(&mut self) -> Result<Binder, ParseError> {
        if self.eat_sym("(") {
            let mut names = vec![self.expect_ident()?];
            while self.eat_sym(",") {
                names.push(self.expect_ident()?);
            }
            self.expect_sym(")")?;
            if names.len() < 2 {
                return Err(self.error("tuple binders need at least two names", &[","]));
            }
            Ok(Binder::Tuple(names))
        } else {
            Ok(Binder::Name(self.expect_ident()?))
        }
    }
}

const TOP_EXPECTED: &[&str] = &["given", "letting", "find", "such that"];
const DOMAIN_EXPECTED: &[&str] = &["int", "relation", "set", "function", "tuple", "identifier"];
const ATTR_EXPECTED: &[&str] = &["irreflexive", "size", "total"];
const EXPR_EXPECTED: &[&str] =
    &["integer", "identifier", "(", "{}", "!", "forAll", "sum", "toInt", "defined"];

/// Words that cannot be used as identifiers.
pub fn is_keyword(w: &str) -> bool {
    matches!(
        w,
        "given"
            | "letting"
            | "find"
            | "such"
            | "that"
            | "be"
            | "domain"
            | "of"
            | "int"
            | "relation"
            | "set"
            | "function"
            | "tuple"
            | "forAll"
            | "sum"
            | "in"
            | "intersect"
            | "toInt"
            | "defined"
    ) || UNSUPPORTED_DOMAINS.contains(&w)
        || UNSUPPORTED_TOPLEVEL.contains(&w)
        || UNSUPPORTED_EXPRS.contains(&w)
}

// Attribute names from full Essence; recognised so the diagnostic names them.
fn is_attr_like(w: &str) -> bool {
    matches!(
        w,
        "minSize"
            | "maxSize"
            | "injective"
            | "surjective"
            | "bijective"
            | "symmetric"
            | "reflexive"
            | "transitive"
            | "partial"
            | "minOccur"
            | "maxOccur"
    )
}
