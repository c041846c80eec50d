//! Abstract syntax for the supported Essence subset.

use std::fmt;

/// A parsed specification: declarations in source order, the `such that`
/// conjuncts, and the `$` comments that were attached to them.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Specification {
    pub declarations: Vec<Declaration>,
    pub constraints: Vec<Expr>,
    pub comments: Vec<Comment>,
}

/// A `$` line comment and the item it precedes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comment {
    pub anchor: CommentAnchor,
    pub text: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CommentAnchor {
    /// Before the declaration with this index.
    Declaration(usize),
    /// Before the constraint with this index.
    Constraint(usize),
    /// After everything else.
    End,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclKind {
    Given,
    LettingDomain,
    LettingValue,
    Find,
}

impl DeclKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DeclKind::Given => "given",
            DeclKind::LettingDomain | DeclKind::LettingValue => "letting",
            DeclKind::Find => "find",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeclBody {
    Domain(Domain),
    Value(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Declaration {
    pub kind: DeclKind,
    pub name: String,
    pub body: DeclBody,
}

impl Declaration {
    pub fn given(name: impl Into<String>, domain: Domain) -> Self {
        Declaration { kind: DeclKind::Given, name: name.into(), body: DeclBody::Domain(domain) }
    }

    pub fn find(name: impl Into<String>, domain: Domain) -> Self {
        Declaration { kind: DeclKind::Find, name: name.into(), body: DeclBody::Domain(domain) }
    }

    pub fn letting_domain(name: impl Into<String>, domain: Domain) -> Self {
        Declaration {
            kind: DeclKind::LettingDomain,
            name: name.into(),
            body: DeclBody::Domain(domain),
        }
    }

    pub fn letting_value(name: impl Into<String>, value: Expr) -> Self {
        Declaration { kind: DeclKind::LettingValue, name: name.into(), body: DeclBody::Value(value) }
    }

    pub fn domain(&self) -> Option<&Domain> {
        match &self.body {
            DeclBody::Domain(d) => Some(d),
            DeclBody::Value(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: AttrName,
    pub arg: Option<Expr>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttrName {
    Irreflexive,
    Size,
    Total,
}

impl AttrName {
    pub fn as_str(self) -> &'static str {
        match self {
            AttrName::Irreflexive => "irreflexive",
            AttrName::Size => "size",
            AttrName::Total => "total",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "irreflexive" => Some(AttrName::Irreflexive),
            "size" => Some(AttrName::Size),
            "total" => Some(AttrName::Total),
            _ => None,
        }
    }

    pub fn takes_arg(self) -> bool {
        matches!(self, AttrName::Size)
    }
}

impl Attribute {
    pub fn size(e: Expr) -> Self {
        Attribute { name: AttrName::Size, arg: Some(e) }
    }

    pub fn flag(name: AttrName) -> Self {
        Attribute { name, arg: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    IntRange { lo: Option<Box<Expr>>, hi: Option<Box<Expr>> },
    IntUnbounded,
    Named(String),
    Relation { attrs: Vec<Attribute>, components: Vec<Domain> },
    Set { attrs: Vec<Attribute>, element: Box<Domain> },
    Function { attrs: Vec<Attribute>, from: Box<Domain>, to: Box<Domain> },
    Tuple(Vec<Domain>),
}

impl Domain {
    pub fn int_range(lo: Option<Expr>, hi: Option<Expr>) -> Self {
        Domain::IntRange { lo: lo.map(Box::new), hi: hi.map(Box::new) }
    }

    pub fn named(name: impl Into<String>) -> Self {
        Domain::Named(name.into())
    }

    pub fn attrs(&self) -> &[Attribute] {
        match self {
            Domain::Relation { attrs, .. }
            | Domain::Set { attrs, .. }
            | Domain::Function { attrs, .. } => attrs,
            _ => &[],
        }
    }

    pub fn attr(&self, name: AttrName) -> Option<&Attribute> {
        self.attrs().iter().find(|a| a.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Eq,
    Neq,
    Implies,
    And,
    In,
    Intersect,
}

impl BinOp {
    pub fn glyph(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Eq => "=",
            BinOp::Neq => "!=",
            BinOp::Implies => "->",
            BinOp::And => "/\\",
            BinOp::In => "in",
            BinOp::Intersect => "intersect",
        }
    }

    pub fn from_glyph(s: &str) -> Option<Self> {
        Some(match s {
            "+" => BinOp::Add,
            "-" => BinOp::Sub,
            "*" => BinOp::Mul,
            "=" => BinOp::Eq,
            "!=" => BinOp::Neq,
            "->" => BinOp::Implies,
            "/\\" => BinOp::And,
            "in" => BinOp::In,
            "intersect" => BinOp::Intersect,
            _ => return None,
        })
    }

    /// Binding strength; larger binds tighter.
    pub fn precedence(self) -> u8 {
        match self {
            BinOp::Implies => 1,
            BinOp::And => 2,
            BinOp::Eq | BinOp::Neq | BinOp::In => 3,
            BinOp::Intersect => 4,
            BinOp::Add | BinOp::Sub => 5,
            BinOp::Mul => 6,
        }
    }

    pub fn assoc(self) -> Assoc {
        match self {
            BinOp::Implies => Assoc::Right,
            BinOp::Eq | BinOp::Neq | BinOp::In => Assoc::None,
            _ => Assoc::Left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assoc {
    Left,
    Right,
    None,
}

/// Quantifier binder: a single name, or a tuple pattern that destructures
/// each element of the source collection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binder {
    Name(String),
    Tuple(Vec<String>),
}

impl Binder {
    pub fn names(&self) -> Vec<&str> {
        match self {
            Binder::Name(n) => vec![n.as_str()],
            Binder::Tuple(ns) => ns.iter().map(String::as_str).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuantSource {
    /// `x : D`
    Domain(Domain),
    /// `x in e`
    Expr(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuantKind {
    ForAll,
    Sum,
}

impl QuantKind {
    pub fn keyword(self) -> &'static str {
        match self {
            QuantKind::ForAll => "forAll",
            QuantKind::Sum => "sum",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(i64),
    Ident(String),
    Tuple(Vec<Expr>),
    EmptySet,
    BinOp { op: BinOp, lhs: Box<Expr>, rhs: Box<Expr> },
    Not(Box<Expr>),
    /// `e[i]`, 1-based.
    TupleIndex { tuple: Box<Expr>, index: u32 },
    Apply { func: String, args: Vec<Expr> },
    Quant { kind: QuantKind, binder: Binder, source: QuantSource, body: Box<Expr> },
    ToInt(Box<Expr>),
    Defined(Box<Expr>),
}

impl Expr {
    pub fn ident(name: impl Into<String>) -> Self {
        Expr::Ident(name.into())
    }

    pub fn bin(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        Expr::BinOp { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }
    }

    pub fn negate(e: Expr) -> Self {
        Expr::Not(Box::new(e))
    }

    pub fn index(tuple: Expr, index: u32) -> Self {
        Expr::TupleIndex { tuple: Box::new(tuple), index }
    }

    pub fn apply(func: impl Into<String>, args: Vec<Expr>) -> Self {
        Expr::Apply { func: func.into(), args }
    }

    pub fn for_all(binder: Binder, source: QuantSource, body: Expr) -> Self {
        Expr::Quant { kind: QuantKind::ForAll, binder, source, body: Box::new(body) }
    }

    pub fn sum(binder: Binder, source: QuantSource, body: Expr) -> Self {
        Expr::Quant { kind: QuantKind::Sum, binder, source, body: Box::new(body) }
    }

    /// Binding strength of the outermost construct, for parenthesisation.
    pub fn precedence(&self) -> u8 {
        match self {
            Expr::Quant { .. } => 0,
            Expr::BinOp { op, .. } => op.precedence(),
            Expr::Not(_) => 7,
            _ => 8,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::essence::printer::print_expr(self))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::essence::printer::print_domain(self))
    }
}

impl Specification {
    pub fn finds(&self) -> impl Iterator<Item = &Declaration> {
        self.declarations.iter().filter(|d| d.kind == DeclKind::Find)
    }

    pub fn givens(&self) -> impl Iterator<Item = &Declaration> {
        self.declarations.iter().filter(|d| d.kind == DeclKind::Given)
    }

    pub fn declaration(&self, name: &str) -> Option<&Declaration> {
        self.declarations.iter().find(|d| d.name == name)
    }

    pub fn is_empty(&self) -> bool {
        self.declarations.is_empty() && self.constraints.is_empty()
    }
}
